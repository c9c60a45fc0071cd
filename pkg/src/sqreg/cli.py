"""Command-line interface: ``sqreg reg | betti | verify``.

Exit codes: 0 success, 1 a verification mismatch, 2 a usage or input error
(including an ideal with more active variables than ``--max-active-vars``).
All vertex names in the output are the 1-based labels x1.., y1...
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Callable, Iterable

from .cache import ResultCache
from .even_connection import verify_colon_identity
from .graph import Graph, cycle, graph_from_spec, matching_number, path, whisker
from .monomial import MonomialIdeal, edge_ideal, ideal_digest, squarefree_power
from .regularity import (
    DEFAULT_MAX_ACTIVE,
    ActiveVariableCapError,
    BettiTable,
    Field,
    betti_table,
    regularity_of_graph,
    regularity_of_ideal,
)
from .verification import (
    LEMMA_HEADER,
    MAIN_HEADER,
    LemmaReport,
    MainRow,
    check_ordering_lemma_cycle,
    check_ordering_lemma_whisker,
    check_perfect_matching_observation,
    check_s_sets,
    check_tech_bounds,
    formula_value,
    squarefree_power_bounds,
)

log = logging.getLogger("sqreg")

TARGETS = (
    "main-theorem",
    "even-colon",
    "ordering-cycle",
    "ordering-whisker",
    "tech-bounds",
    "s-sets",
    "perfect-matching",
    "bounds-suite",
)
FAMILIES = ("path", "cycle", "whiskered_path", "whiskered_cycle")
LARGE_MAIN_N = 8


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing


def parse_range(text: str) -> tuple[int, int]:
    """``"5"`` -> (5, 5); ``"3..7"`` -> (3, 7)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def load_graph(text: str) -> tuple[Graph, dict]:
    try:
        spec = json.loads(text)
    except ValueError:
        p = Path(text)
        if not p.is_file():
            raise UsageError(f"--graph is neither JSON nor a readable file: {text!r}")
        try:
            spec = json.loads(p.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise UsageError(f"{p}: invalid JSON ({exc})") from None
    try:
        return graph_from_spec(spec), spec
    except ValueError as exc:
        raise UsageError(f"bad graph spec: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="f2", choices=["f2", "q"], help="coefficient field (default f2)")
    common.add_argument("--threads", type=_positive, default=None, help="worker processes (default $SQREG_THREADS or 1)")
    common.add_argument("--cache-dir", default=None, help="result cache (default $SQREG_CACHE_DIR or ~/.cache/sqreg)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--max-active-vars", type=_positive, default=DEFAULT_MAX_ACTIVE)
    common.add_argument("--no-timing", action="store_true", help="leave elapsed_ms blank for reproducible output")

    ap = argparse.ArgumentParser(prog="sqreg", description="Regularity of squarefree powers of edge ideals.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reg", parents=[common], help="regularity of I(G) or I(G)^[q]")
    p.add_argument("--graph", required=True, help="JSON spec or path to a JSON file")
    p.add_argument("--q", type=_positive, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("betti", parents=[common], help="graded Betti numbers of I(G) or I(G)^[q]")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=_positive, default=None)
    p.add_argument("--format", choices=["csv", "json", "table"], default="csv")

    p = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--n", type=parse_range, required=True, help="n or a..b")
    p.add_argument("--q", type=parse_range, default=None, help="restrict q to a range")
    p.add_argument("--family", default=None, help="graph family (target dependent)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--large", action="store_true", help=f"allow main-theorem with n >= {LARGE_MAIN_N}")
    return ap


# ---------------------------------------------------------------- computation


class Runner:
    def __init__(self, args: argparse.Namespace):
        self.field = Field.parse(args.field)
        threads = args.threads
        if threads is None:
            env = os.environ.get("SQREG_THREADS")
            try:
                threads = _positive(env) if env else 1
            except argparse.ArgumentTypeError:
                raise UsageError(f"SQREG_THREADS must be a positive integer, got {env!r}") from None
        self.threads = threads
        self.max_active = args.max_active_vars
        self.timing = not args.no_timing
        root = None
        if not args.no_cache:
            root = args.cache_dir or os.environ.get("SQREG_CACHE_DIR") or Path.home() / ".cache" / "sqreg"
        self.cache = ResultCache(root)
        self.hits = 0
        self.misses = 0

    def _cached(self, key: str, compute: Callable[[], dict]) -> tuple[dict, bool]:
        got = self.cache.get(key)
        if got is not None:
            self.hits += 1
            return got, True
        self.misses += 1
        value = compute()
        self.cache.put(key, value)
        return value, False

    def regularity(self, i: MonomialIdeal, g: Graph | None = None) -> tuple[dict, bool]:
        """Regularity of ``i``; when ``g`` is given, ``i`` is I(g) and the graph fast paths apply."""

        def compute() -> dict:
            if g is not None:
                rep = regularity_of_graph(g, self.field, max_active=self.max_active, threads=self.threads)
            else:
                rep = regularity_of_ideal(i, self.field, max_active=self.max_active, threads=self.threads)
            w = rep.witness
            return {
                "regularity": rep.regularity,
                "witness": list(w.subset) if w else [],
                "witness_degree": w.degree if w else None,
                "witness_rank": w.rank if w else None,
                "subsets_scanned": rep.subsets_scanned,
                "active_variables": rep.active_variables,
                "method": rep.method,
            }

        # graph fast paths report a different (equally valid) witness, so they key separately
        mode = "reg-graph" if g is not None else "reg"
        return self._cached(ideal_digest(i, self.field.value, mode), compute)

    def betti(self, i: MonomialIdeal) -> tuple[dict, bool]:
        def compute() -> dict:
            table = betti_table(i, self.field, max_active=self.max_active)
            return {"betti": [[a, b, v] for (a, b), v in sorted(table.entries.items())]}

        return self._cached(ideal_digest(i, self.field.value, "betti"), compute)

    def reg_value(self, g: Graph, q: int) -> int:
        if q == 1:
            return self.regularity(edge_ideal(g), g)[0]["regularity"]
        return self.regularity(squarefree_power(g, q))[0]["regularity"]


def _target_ideal(g: Graph, q: int | None) -> tuple[MonomialIdeal, Graph | None]:
    if q is None or q == 1:
        return edge_ideal(g), g
    return squarefree_power(g, q), None


# ---------------------------------------------------------------- output


def _write_table(out, header: list[str], rows: Iterable[list], fmt: str) -> None:
    rows = [list(r) for r in rows]
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out, indent=2)
        out.write("\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def _ms(start: float, timing: bool) -> str:
    return f"{(time.perf_counter() - start) * 1000:.1f}" if timing else ""


# ---------------------------------------------------------------- commands


def cmd_reg(args, run: Runner, out) -> int:
    g, spec = load_graph(args.graph)
    start = time.perf_counter()
    i, gg = _target_ideal(g, args.q)
    value, hit = run.regularity(i, gg)
    log.info("cache_hit=%s", str(hit).lower())
    witness = [g.labels[v] for v in value["witness"]]
    record = {
        "graph": spec,
        "q": args.q or 1,
        "field": run.field.value,
        "regularity": value["regularity"],
        "witness": witness,
        "witness_degree": value["witness_degree"],
        "witness_rank": value["witness_rank"],
        "active_variables": value["active_variables"],
        "subsets_scanned": value["subsets_scanned"],
        "method": value["method"],
        "elapsed_ms": _ms(start, run.timing),
    }
    if args.format == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
    else:
        header = [k for k in record if k != "graph"]
        row = [" ".join(witness) if k == "witness" else record[k] for k in header]
        _write_table(out, header, [row], "csv")
    return 0


def cmd_betti(args, run: Runner, out) -> int:
    g, _ = load_graph(args.graph)
    i, _ = _target_ideal(g, args.q)
    value, hit = run.betti(i)
    log.info("cache_hit=%s", str(hit).lower())
    rows = value["betti"]
    if args.format == "table":
        out.write(BettiTable({(a, b): v for a, b, v in rows}).format() + "\n")
    else:
        _write_table(out, ["i", "j", "beta"], rows, args.format)
    return 0


def _in(q: int, qr: tuple[int, int] | None) -> bool:
    return qr is None or qr[0] <= q <= qr[1]


def _families(arg: str | None, allowed: tuple[str, ...], default: tuple[str, ...]) -> tuple[str, ...]:
    if arg is None or arg == "all":
        return default
    if arg not in allowed:
        raise UsageError(f"--family must be one of {', '.join(allowed)} or all")
    return (arg,)


def _family_graph(family: str, n: int) -> Graph | None:
    base_ok = n >= 3 if "cycle" in family else n >= 1
    if not base_ok:
        return None
    base = cycle(n) if "cycle" in family else path(n)
    return whisker(base) if family.startswith("whiskered") else base


def _lemma_rows(reports: Iterable[LemmaReport]) -> tuple[list[list], int]:
    rows, bad = [], 0
    for r in reports:
        rows.append(r.row())
        bad += r.violations
        for d in r.details:
            log.warning("%s n=%d q=%d: %s", r.lemma_id, r.n, r.q, d)
    return rows, bad


def _verify_main(args, run: Runner) -> tuple[list[str], list[list], int]:
    lo, hi = args.n
    if hi >= LARGE_MAIN_N and not args.large:
        raise UsageError(f"main-theorem with n >= {LARGE_MAIN_N} is opt-in; pass --large")
    rows, bad = [], 0
    for n in range(max(lo, 3), hi + 1):
        g = whisker(cycle(n))
        for q in range(1, n + 1):
            if not _in(q, args.q):
                continue
            start = time.perf_counter()
            value, _ = run.regularity(squarefree_power(g, q))
            ms = (time.perf_counter() - start) * 1000
            row = MainRow(n, q, matching_number(g), value["regularity"], formula_value(n, q), ms)
            bad += not row.match
            rows.append(row.row(run.timing))
    return MAIN_HEADER, rows, bad


def _sweep(args, run: Runner) -> Iterable[LemmaReport]:
    lo, hi = args.n
    t, qr = args.target, args.q
    if t == "even-colon":
        for fam in _families(args.family, FAMILIES, FAMILIES):
            for n in range(lo, hi + 1):
                g = _family_graph(fam, n)
                if g is None:
                    continue
                for q in range(1, matching_number(g) + 1):
                    if not _in(q, qr or (1, 3)):
                        continue
                    rep = verify_colon_identity(g, q)
                    out = LemmaReport(f"even-colon-{fam}", n, q, rep.instances_checked)
                    for m in rep.counterexamples:
                        out.fail(f"M={m}: colon differs from I(G^M)")
                    for m in rep.degree_violations:
                        out.fail(f"M={m}: generator of degree != 2")
                    yield out
    elif t == "ordering-cycle":
        for n in range(max(lo, 3), hi + 1):
            for q in range(2, n // 2 + 2):
                if _in(q, qr):
                    yield check_ordering_lemma_cycle(n, q)
    elif t in ("ordering-whisker", "s-sets"):
        check = check_ordering_lemma_whisker if t == "ordering-whisker" else check_s_sets
        for n in range(max(lo, 3), hi + 1):
            for q in range(2, n + 1):
                if _in(q, qr):
                    yield check(n, q)
    elif t == "tech-bounds":
        for fam in _families(args.family, ("path", "cycle"), ("path", "cycle")):
            for n in range(max(lo, 3 if fam == "cycle" else 2), hi + 1):
                for rep in check_tech_bounds(fam, n, run.field):
                    if _in(rep.q, qr):
                        yield rep
    elif t == "perfect-matching":
        for fam in _families(args.family, ("path", "cycle"), ("path", "cycle")):
            for n in range(max(lo, 4 if fam == "cycle" else 2), hi + 1):
                if n % 2 == 0 and _in(n // 2 + 1, qr):
                    yield check_perfect_matching_observation(fam, n, run.field)
    elif t == "bounds-suite":
        default = ("whiskered_cycle", "whiskered_path", "cycle", "path")
        for fam in _families(args.family, FAMILIES, default):
            for n in range(lo, hi + 1):
                g = _family_graph(fam, n)
                if g is None or g.edge_count() == 0:
                    continue
                for b in squarefree_power_bounds(g, fam, run.field, reg_of=run.reg_value):
                    if not _in(b.q, qr):
                        continue
                    rep = LemmaReport(f"bounds-{fam}", n, b.q, 3)
                    if not b.lower_ok:
                        rep.fail(f"q + indmatch = {b.q + b.indmatch} > reg = {b.reg}")
                    if not b.upper_ok:
                        rep.fail(f"reg = {b.reg} > q + nu = {b.q + b.nu}")
                    if not b.top_ok:
                        rep.fail(f"reg I^[nu] = {b.reg} != 2 nu = {2 * b.nu}")
                    yield rep


def cmd_verify(args, run: Runner, out) -> int:
    if args.target == "main-theorem":
        header, rows, bad = _verify_main(args, run)
    else:
        header = LEMMA_HEADER
        rows, bad = _lemma_rows(_sweep(args, run))
    if not rows:
        raise UsageError("no instances in the requested ranges")
    _write_table(out, header, rows, args.format)
    return 1 if bad else 0


COMMANDS = {"reg": cmd_reg, "betti": cmd_betti, "verify": cmd_verify}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    log.propagate = False
    args = build_parser().parse_args(argv)
    try:
        run = Runner(args)
        return COMMANDS[args.command](args, run, out)
    except UsageError as exc:
        print(f"sqreg: error: {exc}", file=sys.stderr)
        return 2
    except ActiveVariableCapError as exc:
        print(f"sqreg: error: {exc} (raise --max-active-vars to allow it)", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"sqreg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
