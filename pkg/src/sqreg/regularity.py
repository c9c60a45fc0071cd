"""Castelnuovo-Mumford regularity of squarefree monomial ideals.

Everything goes through Hochster's formula

    beta_{i,j}(R/I) = sum_{|W| = j} dim H~_{j-i-1}(Delta|_W)

for the Stanley-Reisner complex Delta of I, so that

    reg(I) = 2 + max{ d : H~_d(Delta|_W) != 0 for some W }.

Only variables that occur in a generator are kept (the others are cone
points), and only subsets W that are unions of generator supports are
visited: any other W has a cone point and is acyclic.  Each restricted
complex is handled either directly or through its Alexander dual inside W,
``H~_d(Delta|_W) = H~_{|W|-d-3}(Delta|_W^dual)``, whichever has fewer faces.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, _bits, bits, component_masks, induced_subgraph, is_cochordal
from .linalg import gf2_rank, rational_rank
from .monomial import MonomialIdeal, edge_ideal

DEFAULT_MAX_ACTIVE = 16


class Field(Enum):
    GF2 = "f2"
    RATIONAL = "q"

    @classmethod
    def parse(cls, name: "str | Field") -> "Field":
        if isinstance(name, Field):
            return name
        key = name.lower()
        if key in ("f2", "gf2", "gf(2)"):
            return cls.GF2
        if key in ("q", "qq", "rational", "rationals"):
            return cls.RATIONAL
        raise ValueError(f"unknown field {name!r}; use f2 or q")


class ActiveVariableCapError(ValueError):
    def __init__(self, active: int, cap: int):
        super().__init__(f"ideal has {active} active variables, above the cap of {cap}")
        self.active = active
        self.cap = cap


@dataclass(frozen=True)
class HomologyWitness:
    subset: tuple[int, ...]  # W, as variable indices of the ideal's universe
    degree: int  # d with H~_d(Delta|_W) != 0
    rank: int

    @property
    def regularity(self) -> int:
        return self.degree + 2


@dataclass
class RegularityReport:
    regularity: int
    field: Field
    subsets_scanned: int
    elapsed: float
    witness: HomologyWitness | None = None
    active_variables: int = 0
    method: str = "hochster"


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta_{i,j}(I)`` of the ideal (not of R/I)."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def regularity(self) -> int:
        return max((j - i for (i, j), b in self.entries.items() if b), default=0)

    def format(self) -> str:
        """Macaulay2-style table: row ``j - i``, column ``i``."""
        if not self.entries:
            return "(zero ideal)"
        cols = range(max(i for i, _ in self.entries) + 1)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(b)) for b in self.entries.values()) + 1
        lines = ["    " + "".join(f"{i:>{width}}" for i in cols)]
        for r in rows:
            cells = [self[i, i + r] or "." for i in cols]
            lines.append(f"{r:>3}:" + "".join(f"{c:>{width}}" for c in cells))
        return "\n".join(lines)


# ---------------------------------------------------------------- complexes


def restricted_faces(i: MonomialIdeal, w: Iterable[int] | int) -> list[int]:
    """Faces of the Stanley-Reisner complex of ``i`` inside the vertex set ``w``.

    A face is a subset of ``w`` containing no generator support; the empty
    face is included unless ``i`` is the unit ideal.
    """
    mask = w if isinstance(w, int) else sum(1 << v for v in set(w))
    if mask >> i.universe_size:
        raise ValueError("w must be a subset of the variable universe")
    gens = [g for g in i.generators if g & ~mask == 0]
    out = []
    for size in range(mask.bit_count() + 1):
        for combo in combinations(bits(mask), size):
            f = sum(1 << v for v in combo)
            if not any(g & ~f == 0 for g in gens):
                out.append(f)
    return out


def _as_mask(face) -> int:
    if isinstance(face, int):
        return face
    return sum(1 << v for v in set(face))


def _boundary_rank(upper: Sequence[int], lower: Sequence[int], field: Field) -> int:
    """Rank of the simplicial boundary map from ``upper`` faces to ``lower`` faces."""
    if not upper or not lower:
        return 0
    pos = {f: k for k, f in enumerate(lower)}
    if field is Field.GF2:
        rows = []
        for f in upper:
            row = 0
            for v in _bits(f):
                row |= 1 << pos[f ^ (1 << v)]
            rows.append(row)
        return gf2_rank(rows)
    srows = []
    for f in upper:
        row = {}
        for k, v in enumerate(_bits(f)):
            row[pos[f ^ (1 << v)]] = -1 if k & 1 else 1
        srows.append(row)
    return rational_rank(srows)


def reduced_homology_ranks(faces: Iterable, field: Field | str = Field.GF2) -> dict[int, int]:
    """Ranks of reduced homology ``{d: dim H~_d}`` for ``d = -1 .. dim``.

    ``faces`` may hold bitmasks or vertex iterables and must be closed under
    taking subsets.  The void complex (no faces at all) returns ``{}``.
    """
    field = Field.parse(field)
    fs = {_as_mask(f) for f in faces}
    for f in fs:
        for v in _bits(f):
            if f ^ (1 << v) not in fs:
                raise ValueError(f"not a simplicial complex: a facet of {bits(f)} is missing")
    if not fs:
        return {}
    if 0 not in fs:
        raise ValueError("not a simplicial complex: the empty face is missing")
    top = max(f.bit_count() for f in fs) - 1
    by_size: list[list[int]] = [[] for _ in range(top + 3)]
    for f in sorted(fs):
        by_size[f.bit_count()].append(f)
    # ranks[d] = rank of the boundary from d-faces (size d+1) to (d-1)-faces
    ranks = {d: _boundary_rank(by_size[d + 1], by_size[d], field) for d in range(0, top + 1)}
    return {
        d: len(by_size[d + 1]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        for d in range(-1, top + 1)
    }


# ---------------------------------------------------------------- engine


def _sos_or(table: np.ndarray, k: int) -> None:
    """In place: table[W] |= table[W without b] for every bit b (subset zeta)."""
    for b in range(k):
        view = table.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]


def _sos_max(table: np.ndarray, k: int) -> None:
    for b in range(k):
        view = table.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])


class _Tables:
    """Precomputed subset tables for an ideal on ``k`` compressed variables."""

    def __init__(self, k: int, gens: Sequence[int]):
        self.k = k
        size = 1 << k
        ids = np.arange(size, dtype=np.int64)
        self.popcount = np.zeros(size, dtype=np.int64)
        for b in range(k):
            self.popcount += (ids >> b) & 1
        nonface = np.zeros(size, dtype=bool)
        nonface[list(gens)] = True
        _sos_or(nonface, k)
        self.nonface = nonface
        cover = np.zeros(size, dtype=np.int64)
        cover[list(gens)] = list(gens)
        _sos_or(cover, k)
        self.cover = cover
        maxface = np.where(nonface, 0, self.popcount)
        _sos_max(maxface, k)
        self.maxface = maxface
        order = np.argsort(self.popcount, kind="stable")
        counts = np.bincount(self.popcount, minlength=k + 1)
        starts = np.concatenate([[0], np.cumsum(counts)])
        self.by_size = [order[starts[s] : starts[s + 1]] for s in range(k + 1)]

    def submasks(self, w: int, size: int) -> np.ndarray:
        if size < 0 or size > self.k:
            return np.empty(0, dtype=np.int64)
        cand = self.by_size[size]
        return cand[(cand & ~w) == 0]

    def candidates(self) -> np.ndarray:
        ids = np.arange(1 << self.k, dtype=np.int64)
        return ids[(self.cover == ids) & (ids != 0)]

    def upper_bound(self, w: int) -> int:
        """Largest reg value W can certify: d <= |W| - 2 and d <= dim Delta|_W."""
        return int(min(self.popcount[w], self.maxface[w] + 1))


class _RestrictedComplex:
    """Delta|_W, or its Alexander dual inside W, with lazily built levels."""

    def __init__(self, tables: _Tables, w: int, dual: bool, field: Field):
        self.t = tables
        self.w = w
        self.size = w.bit_count()
        self.dual = dual
        self.field = field
        self._faces: dict[int, list[int]] = {}
        self._ranks: dict[int, int] = {}

    def faces(self, size: int) -> list[int]:
        got = self._faces.get(size)
        if got is None:
            sub = self.t.submasks(self.w, size)
            if self.dual:
                keep = self.t.nonface[self.w ^ sub] if len(sub) else sub.astype(bool)
            else:
                keep = ~self.t.nonface[sub] if len(sub) else sub.astype(bool)
            got = sub[keep].tolist()
            self._faces[size] = got
        return got

    def boundary_rank(self, d: int) -> int:
        if d < 0:
            return 0
        got = self._ranks.get(d)
        if got is None:
            got = _boundary_rank(self.faces(d + 1), self.faces(d), self.field)
            self._ranks[d] = got
        return got

    def homology(self, d: int) -> int:
        """dim H~_d of the complex actually stored (primal or dual)."""
        if d < -1:
            return 0
        return len(self.faces(d + 1)) - self.boundary_rank(d) - self.boundary_rank(d + 1)

    def primal_homology(self, d: int) -> int:
        if not self.dual:
            return self.homology(d)
        return self.homology(self.size - d - 3)


def _open_complex(t: _Tables, w: int, d_hint: int, field: Field) -> _RestrictedComplex:
    size = w.bit_count()
    primal = _RestrictedComplex(t, w, False, field)
    dual = _RestrictedComplex(t, w, True, field)
    if len(dual.faces(size - d_hint - 2)) < len(primal.faces(d_hint + 1)):
        return dual
    return primal


def _scan(k: int, gens: Sequence[int], field: Field, ws: Sequence[int], seed: int, bounded: bool = True):
    """Find the first W (in the given order) reaching the largest value > seed.

    Returns (best value, index into ws or -1, degree, rank).  With
    ``bounded=False`` no W is skipped and every degree down to -1 is tried.
    """
    t = _Tables(k, gens)
    best, where, wdeg, wrank = seed, -1, 0, 0
    for idx, w in enumerate(ws):
        ub = t.upper_bound(w) if bounded else w.bit_count()
        if bounded and ub <= best:
            continue
        cx = None
        for d in range(ub - 2, (best - 2) if bounded else -2, -1):
            if cx is None:
                cx = _open_complex(t, w, d, field)
            h = cx.primal_homology(d)
            if h:
                if d + 2 > best:
                    best, where, wdeg, wrank = d + 2, idx, d, h
                break
    return best, where, wdeg, wrank


def _compress(i: MonomialIdeal) -> tuple[list[int], list[int]]:
    active = bits(i.support)
    pos = {v: k for k, v in enumerate(active)}
    gens = []
    for g in i.generators:
        gens.append(sum(1 << pos[v] for v in _bits(g)))
    return active, gens


def _expand(active: Sequence[int], w: int) -> tuple[int, ...]:
    return tuple(active[b] for b in _bits(w))


def regularity_of_ideal(
    i: MonomialIdeal,
    field: Field | str = Field.GF2,
    *,
    max_active: int = DEFAULT_MAX_ACTIVE,
    threads: int = 1,
    prune: bool = True,
) -> RegularityReport:
    """Exact regularity of a squarefree monomial ideal via Hochster's formula.

    The zero ideal gets regularity 0.  With ``prune=False`` every nonempty
    subset of the active variables is examined and no lower-bound seeding is
    used; the answer must not change.
    """
    field = Field.parse(field)
    start = time.perf_counter()
    if i.is_unit:
        raise ValueError("the unit ideal has no regularity")
    if i.is_zero:
        return RegularityReport(0, field, 0, time.perf_counter() - start)
    active, gens = _compress(i)
    k = len(active)
    if k > max_active:
        raise ActiveVariableCapError(k, max_active)
    t = _Tables(k, gens)
    if prune:
        ws = t.candidates()
    else:
        ws = np.arange(1, 1 << k, dtype=np.int64)
    ub = np.minimum(t.popcount[ws], t.maxface[ws] + 1)
    ws = ws[np.lexsort((ws, -ub))].tolist()
    if prune:
        # reg(I) is at least the largest generator degree, certified by that generator
        top = max(gens, key=lambda g: (g.bit_count(), -g))
        seed = top.bit_count() - 1
    else:
        top, seed = None, 0
    threads = max(1, int(threads))
    if threads == 1 or len(ws) < 2 * threads:
        parts = [_scan(k, gens, field, ws, seed, prune)]
        offsets = [(0, 1)]
    else:
        chunks = [ws[c::threads] for c in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(_scan, [k] * threads, [gens] * threads, [field] * threads, chunks, [seed] * threads, [prune] * threads)
            )
        offsets = [(c, threads) for c in range(threads)]
    best, witness = seed, None
    best_pos = None
    for (value, where, deg, rank), (off, step) in zip(parts, offsets):
        if where < 0:
            continue
        pos = off + where * step
        if value > best or (value == best and best_pos is not None and pos < best_pos):
            best, best_pos = value, pos
            witness = HomologyWitness(_expand(active, ws[pos]), deg, rank)
    if witness is None and top is not None:
        witness = HomologyWitness(_expand(active, top), top.bit_count() - 2, 1)
    return RegularityReport(
        best,
        field,
        len(ws),
        time.perf_counter() - start,
        witness,
        active_variables=k,
    )


def betti_table(i: MonomialIdeal, field: Field | str = Field.GF2, *, max_active: int = DEFAULT_MAX_ACTIVE) -> BettiTable:
    """All graded Betti numbers of ``i`` (shifted from R/I: beta_{i,j}(I) = beta_{i+1,j}(R/I))."""
    field = Field.parse(field)
    if i.is_unit:
        raise ValueError("the unit ideal has no minimal resolution of this kind")
    table = BettiTable()
    if i.is_zero:
        return table
    active, gens = _compress(i)
    k = len(active)
    if k > max_active:
        raise ActiveVariableCapError(k, max_active)
    t = _Tables(k, gens)
    for w in t.candidates().tolist():
        size = w.bit_count()
        primal = _RestrictedComplex(t, w, False, field)
        dual = _RestrictedComplex(t, w, True, field)
        n_primal = sum(len(primal.faces(s)) for s in range(size + 1))
        n_dual = sum(len(dual.faces(s)) for s in range(size + 1))
        cx = dual if n_dual < n_primal else primal
        for d in range(-1, size - 1):
            h = cx.primal_homology(d)
            if h:
                # beta_{p,j}(R/I) with j = |W|, p = j - d - 1; shift to I
                key = (size - d - 2, size)
                table.entries[key] = table.entries.get(key, 0) + h
    return table


# ---------------------------------------------------------------- graphs


def _join(a: HomologyWitness | None, b: HomologyWitness | None) -> HomologyWitness | None:
    # Delta of a disjoint union restricted to W1 u W2 is the join; degrees add plus one.
    if a is None or b is None:
        return None
    return HomologyWitness(tuple(sorted(a.subset + b.subset)), a.degree + b.degree + 1, a.rank * b.rank)


def regularity_of_graph(
    g: Graph,
    field: Field | str = Field.GF2,
    *,
    fast: bool = True,
    max_active: int = DEFAULT_MAX_ACTIVE,
    threads: int = 1,
) -> RegularityReport:
    """Regularity of the edge ideal of ``g``.

    Fast paths: no edges gives 0; a co-chordal graph with edges gives 2;
    components add up as ``sum(reg_i) - (c - 1)`` over components with edges.
    With ``fast=False`` the Hochster engine runs on the whole edge ideal.
    """
    field = Field.parse(field)
    start = time.perf_counter()
    if not fast:
        return regularity_of_ideal(edge_ideal(g), field, max_active=max_active, threads=threads)
    if g.edge_count() == 0:
        return RegularityReport(0, field, 0, time.perf_counter() - start, method="edgeless")
    parts = [m for m in component_masks(g) if m.bit_count() > 1]
    total, scanned, witness, methods = 0, 0, None, set()
    for n_done, mask in enumerate(parts):
        sub, vmap = induced_subgraph(g, mask)
        if is_cochordal(sub):
            i, j = sub.edges()[0]
            rep = RegularityReport(2, field, 0, 0.0, HomologyWitness((i, j), 0, 1), method="cochordal")
        else:
            rep = regularity_of_ideal(edge_ideal(sub), field, max_active=max_active, threads=threads)
        methods.add(rep.method)
        scanned += rep.subsets_scanned
        w = rep.witness
        if w is not None:
            w = HomologyWitness(tuple(vmap[v] for v in w.subset), w.degree, w.rank)
        witness = w if n_done == 0 else _join(witness, w)
        total = rep.regularity if n_done == 0 else total + rep.regularity - 1
    method = methods.pop() if len(parts) == 1 else "components"
    return RegularityReport(
        total,
        field,
        scanned,
        time.perf_counter() - start,
        witness,
        active_variables=sum(m.bit_count() for m in parts),
        method=method,
    )


def quotient_regularity(g: Graph, field: Field | str = Field.GF2) -> int:
    """reg(R / I(G)), i.e. reg(I(G)) - 1, with 0 for an edgeless graph."""
    return max(regularity_of_graph(g, field).regularity - 1, 0)
