"""Whiskered-cycle constructions and the computational checks built on them.

Indexing inside W(C_n): ``x_i`` is vertex ``i - 1`` and its whisker ``y_i``
is vertex ``n + i - 1``.  Cycle edges are ranked

    {x1,x2} < {x2,x3} < ... < {x_{n-1},x_n} < {x1,x_n}

and a matching is compared through the sorted sequence of its edge ranks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .even_connection import even_connection_graph
from .graph import (
    Edge,
    Graph,
    Matching,
    cycle,
    delete_vertices,
    closed_neighborhood,
    enumerate_matchings,
    induced_matching_number,
    is_cochordal,
    is_matching,
    matching_number,
    matching_support,
    path,
    whisker,
)
from .monomial import (
    add,
    colon_by_monomial,
    colon_pair,
    contains,
    monomial_str,
    squarefree_power,
)
from .regularity import Field, quotient_regularity, regularity_of_graph, regularity_of_ideal


# ---------------------------------------------------------------- orderings


def cycle_edge_order(n: int) -> list[Edge]:
    """Edges of C_n from smallest to largest."""
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]


def cycle_edge_rank(n: int) -> dict[Edge, int]:
    return {e: k for k, e in enumerate(cycle_edge_order(n))}


def edge_less(n: int, e: Edge, f: Edge) -> bool:
    rank = cycle_edge_rank(n)
    return rank[tuple(sorted(e))] < rank[tuple(sorted(f))]


def edge_sequence(n: int, m: Sequence[Edge]) -> tuple[int, ...]:
    """e(M): ranks of the cycle edges of M in increasing order."""
    rank = cycle_edge_rank(n)
    return tuple(sorted(rank[tuple(sorted(e))] for e in m))


@dataclass(frozen=True)
class GeneratorEntry:
    monomial: int
    matching: Matching
    block: int  # number of whisker edges j
    index: int  # position a of the cycle part inside its block (0-based)
    whiskers: tuple[int, ...] = ()  # x-indices i with {x_i, y_i} in the matching


@dataclass
class OrderedGeneratorList:
    n: int
    q: int
    universe_size: int
    entries: list[GeneratorEntry]

    def __post_init__(self) -> None:
        self.position = {e.monomial: k for k, e in enumerate(self.entries)}

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> GeneratorEntry:
        return self.entries[k]

    @property
    def monomials(self) -> list[int]:
        return [e.monomial for e in self.entries]


def ordered_generators_cycle(n: int, q: int) -> OrderedGeneratorList:
    """Minimal generators of I(C_n)^[q-1] in the lexicographic edge-sequence order.

    Matchings with the same support collapse onto the one with the smallest
    edge sequence.  For q = 1 the list is the single monomial 1.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    best: dict[int, tuple[tuple[int, ...], Matching]] = {}
    for m in enumerate_matchings(cycle(n), q - 1):
        key = edge_sequence(n, m)
        supp = matching_support(m)
        if supp not in best or key < best[supp][0]:
            best[supp] = (key, m)
    order = cycle_edge_order(n)
    entries = []
    for a, (supp, (key, _)) in enumerate(sorted(best.items(), key=lambda kv: kv[1][0])):
        entries.append(GeneratorEntry(supp, tuple(order[k] for k in key), 0, a))
    return OrderedGeneratorList(n, q, n, entries)


def ordered_generators_whiskered_cycle(n: int, q: int) -> OrderedGeneratorList:
    """Minimal generators of I(W(C_n))^[q-1], blocked by whisker count.

    Block j holds a cycle generator of I(C_n)^[q-1-j] times j whiskers whose
    x-vertices avoid it; blocks come in increasing j, then by the cycle
    generator's position, then by the sorted whisker tuple.
    """
    if not 1 <= q <= n + 1:
        raise ValueError(f"need 1 <= q <= n + 1, got q={q}, n={n}")
    entries = []
    for j in range(q):
        base = ordered_generators_cycle(n, q - j).entries if j <= q - 2 else [GeneratorEntry(0, (), 0, 0)]
        for a, cyc in enumerate(base):
            free = [i for i in range(n) if not cyc.monomial >> i & 1]
            for s in combinations(free, j):
                mono = cyc.monomial
                for i in s:
                    mono |= (1 << i) | (1 << (n + i))
                match = tuple(sorted(cyc.matching + tuple((i, n + i) for i in s)))
                entries.append(GeneratorEntry(mono, match, j, a, s))
    return OrderedGeneratorList(n, q, 2 * n, entries)


# ---------------------------------------------------------------- reports


@dataclass
class LemmaReport:
    lemma_id: str
    n: int
    q: int
    instances_checked: int = 0
    violations: int = 0
    details: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.violations += 1
        if len(self.details) < 20:
            self.details.append(message)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def row(self) -> list:
        return [self.lemma_id, self.n, self.q, self.instances_checked, self.violations]


LEMMA_HEADER = ["lemma_id", "n", "q", "instances_checked", "violations"]


def _pairwise_disjunction(report: LemmaReport, gens: Sequence[int], big) -> None:
    for i, mi in enumerate(gens):
        target = colon_by_monomial(big, mi)
        variables = [c for c in (colon_pair(gens[r], mi) for r in range(i)) if c.bit_count() == 1]
        for j in range(i):
            c = colon_pair(gens[j], mi)
            report.instances_checked += 1
            if contains(target, c):
                continue
            if any(v & ~c == 0 for v in variables):
                continue
            report.fail(f"pair j={j} i={i}: ({monomial_str(gens[j])}:{monomial_str(mi)}) = {monomial_str(c)}")


def check_ordering_lemma_cycle(n: int, q: int) -> LemmaReport:
    """For j < i: (m_j:m_i) lies in (I(C_n)^[q]:m_i) or in some (m_r:m_i) = (variable), r < i."""
    if q < 2:
        raise ValueError("the ordering lemma needs q >= 2")
    report = LemmaReport("cycle-ordering", n, q)
    gens = ordered_generators_cycle(n, q).monomials
    big = squarefree_power(cycle(n), q)
    _pairwise_disjunction(report, gens, big)
    return report


def check_ordering_lemma_whisker(n: int, q: int) -> LemmaReport:
    """Both forms of the whiskered-cycle ordering lemma.

    Pairwise: as for the cycle.  Ideal form: for every i,
    ((I^[q], m_1..m_{i-1}) : m_i) equals (I^[q] : m_i) plus variables.
    """
    if not 2 <= q <= n:
        raise ValueError(f"need 2 <= q <= n, got q={q}, n={n}")
    report = LemmaReport("whisker-ordering", n, q)
    g = whisker(cycle(n))
    gens = ordered_generators_whiskered_cycle(n, q).monomials
    big = squarefree_power(g, q)
    _pairwise_disjunction(report, gens, big)
    running = big
    for i, mi in enumerate(gens):
        lhs = colon_by_monomial(running, mi)
        base = colon_by_monomial(big, mi)
        variables = [v for v in lhs.generators if v.bit_count() == 1]
        report.instances_checked += 1
        if lhs != add(base, variables):
            report.fail(f"i={i}: colon {lhs.format(g.labels)} is not (I^[q]:m_i) + variables")
        running = add(running, [mi])
    return report


# ---------------------------------------------------------------- blocks


@dataclass
class Block:
    vertices: tuple[int, ...]  # x-indices x_{i,1} .. x_{i,n_i} along the path
    left: int  # x-index of the whisker vertex next to x_{i,1}
    right: int  # x-index of the whisker vertex next to x_{i,n_i}
    matching: Matching  # B_i
    kind: str  # "free", "head" or "tail"
    j: int | None = None
    f: int | None = None
    s_set: tuple[int, ...] = ()  # vertex indices in W(C_n)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def b(self) -> int:
        return len(self.matching)


@dataclass
class BlockDecomposition:
    n: int
    whiskers: tuple[int, ...]
    cycle_matching: Matching
    blocks: list[Block]
    gamma1: int
    gamma2: int
    gamma: int

    @property
    def s_union(self) -> tuple[int, ...]:
        return tuple(sorted(v for blk in self.blocks for v in blk.s_set))


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _classify(n: int, verts: tuple[int, ...], left: int, right: int, bi: set[Edge]) -> Block:
    supp = {v for e in bi for v in e}
    ni = len(verts)
    first, last = verts[0], verts[-1]
    in_b = lambda p, r: _edge(verts[p], verts[r]) in bi  # noqa: E731
    if first not in supp and last not in supp:
        s = {first, last}
        return Block(verts, left, right, tuple(sorted(bi)), "free", s_set=tuple(sorted(s)))
    if first in supp:
        j = 0
        while 2 * j + 1 < ni and in_b(2 * j, 2 * j + 1):
            j += 1
        s = {n + verts[2 * t - 1] for t in range(1, j + 1)}
        if 2 * j < ni:
            s.add(verts[2 * j])
        return Block(verts, left, right, tuple(sorted(bi)), "head", j=j, s_set=tuple(sorted(s)))
    f = 0
    while ni - 2 * f - 2 >= 0 and in_b(ni - 1 - 2 * f, ni - 2 - 2 * f):
        f += 1
    s = {first, verts[ni - 1 - 2 * f]}
    return Block(verts, left, right, tuple(sorted(bi)), "tail", f=f, s_set=tuple(sorted(s)))


def decompose_even_connection_graph(n: int, m: Sequence[Edge]) -> BlockDecomposition:
    """Split W(C_n)^M along the whiskered vertices of M.

    Removing the x-vertices of the whisker edges of M cuts C_n into paths
    H_i, each read in increasing cyclic order from the whisker vertex before
    it.  Blocks are classed as free (no end in Supp(B_i)), head (first vertex
    matched) or tail (only last vertex matched) and listed in that order, and
    each gets its S-set.
    """
    m = [_edge(*e) for e in m]
    if not is_matching(whisker(cycle(n)), m):
        raise ValueError("M must be a matching of W(C_n)")
    wh = tuple(sorted(i for i, j in m if j == n + i))
    if not wh:
        raise ValueError("M contains no whisker edge")
    b = tuple(sorted(e for e in m if e[1] < n))
    bset = set(b)
    found = []
    for t, w in enumerate(wh):
        nxt = wh[(t + 1) % len(wh)]
        gap = (nxt - w - 1) % n if len(wh) > 1 else n - 1
        if gap == 0:
            continue
        verts = tuple((w + 1 + s) % n for s in range(gap))
        vs = set(verts)
        bi = {e for e in bset if e[0] in vs and e[1] in vs}
        found.append(_classify(n, verts, w, nxt, bi))
    order = {"free": 0, "head": 1, "tail": 2}
    blocks = sorted(found, key=lambda blk: order[blk.kind])
    g1 = sum(blk.kind == "free" for blk in blocks)
    g2 = g1 + sum(blk.kind == "head" for blk in blocks)
    return BlockDecomposition(n, wh, b, blocks, g1, g2, len(blocks))


def constructive_witness(n: int, m: Sequence[Edge], block: Block, z: int) -> Matching:
    """The explicit matching M_r with (m_r : m_l) = (z) built from the block structure."""
    if z not in block.s_set:
        raise ValueError("z must lie in the block's S-set")
    v = block.vertices
    ni = len(v)
    out = {_edge(*e) for e in m}

    def swap(drop: list[Edge], put: list[Edge]) -> Matching:
        res = set(out)
        for e in drop:
            res.remove(_edge(*e))
        res.update(_edge(*e) for e in put)
        return tuple(sorted(res))

    left_whisker = (block.left, n + block.left)
    right_whisker = (block.right, n + block.right)
    if block.kind == "free" or (block.kind == "tail" and z == v[0]):
        if z == v[0]:
            return swap([left_whisker], [(block.left, v[0])])
        return swap([right_whisker], [(block.right, v[-1])])
    if block.kind == "head":
        j = block.j
        if z < n:  # z = x_{i,2j+1}
            drop = [left_whisker] + [(v[2 * t - 2], v[2 * t - 1]) for t in range(1, j + 1)]
            put = [(block.left, v[0])] + [(v[2 * t - 1], v[2 * t]) for t in range(1, j + 1)]
            return swap(drop, put)
        s = v.index(z - n) // 2 + 1  # z = y_{i,2s}
        drop = [left_whisker] + [(v[2 * t - 2], v[2 * t - 1]) for t in range(1, s + 1)]
        put = [(block.left, v[0])] + [(v[2 * t - 1], v[2 * t]) for t in range(1, s)] + [(z - n, z)]
        return swap(drop, put)
    f = block.f
    drop = [right_whisker] + [(v[ni - 1 - 2 * t], v[ni - 2 - 2 * t]) for t in range(f)]
    put = [(block.right, v[-1])] + [(v[ni - 2 - 2 * t], v[ni - 3 - 2 * t]) for t in range(f)]
    return swap(drop, put)


def find_smaller_witness(gens: OrderedGeneratorList, ell: int, z: int) -> int | None:
    """Least r < ell with (m_r : m_ell) = (z), or None."""
    target = gens[ell].monomial
    for r in range(ell):
        if colon_pair(gens[r].monomial, target) == 1 << z:
            return r
    return None


def check_s_sets(n: int, q: int) -> LemmaReport:
    """Witness search for every m_l with whiskers and every z in its S-set.

    Each (m_l, z) counts once; it fails when no smaller witness exists or when
    the explicit construction is not a smaller generator with colon (z).
    """
    if not 2 <= q <= n:
        raise ValueError(f"need 2 <= q <= n, got q={q}, n={n}")
    report = LemmaReport("s-set-witness", n, q)
    g = whisker(cycle(n))
    gens = ordered_generators_whiskered_cycle(n, q)
    for ell, entry in enumerate(gens.entries):
        if entry.block == 0:
            continue
        dec = decompose_even_connection_graph(n, entry.matching)
        for blk in dec.blocks:
            for z in blk.s_set:
                report.instances_checked += 1
                label = f"m_l={monomial_str(entry.monomial, g.labels)} z={g.labels[z]}"
                if find_smaller_witness(gens, ell, z) is None:
                    report.fail(f"{label}: no smaller witness")
                    continue
                mr = constructive_witness(n, entry.matching, blk, z)
                mono = matching_support(mr)
                r = gens.position.get(mono)
                if not is_matching(g, mr) or len(mr) != q - 1 or r is None:
                    report.fail(f"{label}: construction is not a generator")
                elif r >= ell:
                    report.fail(f"{label}: construction {monomial_str(mono, g.labels)} is not smaller")
                elif colon_pair(mono, entry.monomial) != 1 << z:
                    report.fail(f"{label}: construction has the wrong colon")
    return report


# ---------------------------------------------------------------- formulas


def formula_value(n: int, q: int) -> int:
    """2q + floor((n - q - 1)/2), the floor term clamped at 0."""
    if not 1 <= q <= n:
        raise ValueError(f"need 1 <= q <= n, got q={q}, n={n}")
    return 2 * q + max(0, (n - q - 1) // 2)


def whisker_known_regularity(family: str, n: int) -> int:
    """reg I(W(P_n)) = 2 + floor((n-1)/2) and reg I(W(C_n)) = 2 + floor((n-2)/2)."""
    if family == "path":
        return 2 + (n - 1) // 2
    if family == "cycle":
        return 2 + (n - 2) // 2
    raise ValueError(f"unknown family {family!r}")


def _base(family: str, n: int) -> Graph:
    if family == "path":
        return path(n)
    if family == "cycle":
        return cycle(n)
    raise ValueError(f"family must be path or cycle, got {family!r}")


def check_tech_bounds(family: str, n: int, field: Field | str = Field.GF2) -> list[LemmaReport]:
    """reg I(G^N) against 2 + floor((n-q)/2) (path) or 2 + floor((n-q-1)/2) (cycle).

    One report per q in 2 .. floor(n/2)+1, over every (q-1)-matching N of the
    base path or cycle inside its whisker graph.
    """
    base = _base(family, n)
    g = whisker(base)
    shift = 0 if family == "path" else 1
    out = []
    for q in range(2, n // 2 + 2):
        report = LemmaReport(f"tech-{family}", n, q)
        bound = 2 + max(0, (n - q - shift) // 2)
        for nm in enumerate_matchings(base, q - 1):
            reg = regularity_of_graph(even_connection_graph(g, nm), field).regularity
            report.instances_checked += 1
            if reg > bound:
                report.fail(f"N={nm}: reg {reg} > {bound}")
        out.append(report)
    return out


def perfect_matchings(family: str, n: int) -> list[Matching]:
    if n % 2:
        raise ValueError("a perfect matching needs an even number of vertices")
    first = tuple((i, i + 1) for i in range(0, n, 2))
    if family == "path":
        return [first]
    _base(family, n)
    second = tuple(sorted([(i, i + 1) for i in range(1, n - 1, 2)] + [(0, n - 1)]))
    return [first, second]


def expected_perfect_matching_edges(family: str, n: int) -> set[frozenset[str]]:
    pairs = [(i, j) for i in range(1, n + 1, 2) for j in range(2, n + 1, 2)]
    if family == "path":
        pairs = [(i, j) for i, j in pairs if i < j]
    return {frozenset((f"y{i}", f"y{j}")) for i, j in pairs}


def check_perfect_matching_observation(family: str, n: int, field: Field | str = Field.GF2) -> LemmaReport:
    """G^M for a perfect matching of P_n or C_n: literal edge set, co-chordal, reg 2."""
    report = LemmaReport(f"perfect-matching-{family}", n, n // 2 + 1)
    g = whisker(_base(family, n))
    want = expected_perfect_matching_edges(family, n)
    for m in perfect_matchings(family, n):
        gm = even_connection_graph(g, m)
        report.instances_checked += 1
        if gm.edge_labels() != want:
            report.fail(f"M={m}: edges {sorted(map(sorted, gm.edge_labels()))}")
        if not is_cochordal(gm):
            report.fail(f"M={m}: not co-chordal")
        for fast in (True, False):
            reg = regularity_of_graph(gm, field, fast=fast).regularity
            if reg != 2:
                report.fail(f"M={m}: reg {reg} (fast={fast})")
    return report


# ---------------------------------------------------------------- sweeps


MAIN_HEADER = ["n", "q", "nu", "computed_reg", "formula_value", "match", "elapsed_ms"]


@dataclass
class MainRow:
    n: int
    q: int
    nu: int
    computed: int
    formula: int
    elapsed_ms: float
    witness: tuple[int, ...] = ()

    @property
    def match(self) -> bool:
        return self.computed == self.formula

    def row(self, timing: bool = True) -> list:
        ms = f"{self.elapsed_ms:.1f}" if timing else ""
        return [self.n, self.q, self.nu, self.computed, self.formula, str(self.match).lower(), ms]


def main_theorem_row(n: int, q: int, field: Field | str = Field.GF2, threads: int = 1, max_active: int = 16) -> MainRow:
    g = whisker(cycle(n))
    start = time.perf_counter()
    rep = regularity_of_ideal(squarefree_power(g, q), field, threads=threads, max_active=max_active)
    ms = (time.perf_counter() - start) * 1000
    return MainRow(n, q, n, rep.regularity, formula_value(n, q), ms, rep.witness.subset if rep.witness else ())


def verify_main_theorem(n_min: int, n_max: int, field: Field | str = Field.GF2, threads: int = 1, max_active: int = 16) -> list[MainRow]:
    """reg I(W(C_n))^[q] against the closed formula for every n in range and 1 <= q <= n."""
    return [main_theorem_row(n, q, field, threads, max_active) for n in range(n_min, n_max + 1) for q in range(1, n + 1)]


@dataclass
class BoundsRow:
    name: str
    q: int
    reg: int
    indmatch: int
    nu: int

    @property
    def lower_ok(self) -> bool:
        return self.q + self.indmatch <= self.reg

    @property
    def upper_ok(self) -> bool:
        return self.reg <= self.q + self.nu

    @property
    def top_ok(self) -> bool:
        return self.q != self.nu or self.reg == 2 * self.nu

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.top_ok


def squarefree_power_bounds(g: Graph, name: str = "", field: Field | str = Field.GF2, reg_of=None) -> list[BoundsRow]:
    """q + indmatch <= reg I(G)^[q] <= q + nu, and reg = 2 nu at q = nu, for all q."""
    nu = matching_number(g)
    im = induced_matching_number(g)
    rows = []
    for q in range(1, nu + 1):
        reg = reg_of(g, q) if reg_of else regularity_of_ideal(squarefree_power(g, q), field).regularity
        rows.append(BoundsRow(name, q, reg, im, nu))
    return rows


def check_deletion_bound(g: Graph, field: Field | str = Field.GF2) -> LemmaReport:
    """reg R/I(G) <= max(reg R/I(G - x), reg R/I(G - N[x]) + 1) for every vertex x."""
    report = LemmaReport("deletion-bound", g.vertex_count, 1)
    whole = quotient_regularity(g, field)
    for x in range(g.vertex_count):
        a = quotient_regularity(delete_vertices(g, [x]), field)
        b = quotient_regularity(delete_vertices(g, closed_neighborhood(g, [x])), field) + 1
        report.instances_checked += 1
        if whole > max(a, b):
            report.fail(f"x={g.labels[x]}: {whole} > max({a}, {b})")
    return report


def check_colon_regularity(n: int, q: int, field: Field | str = Field.GF2) -> LemmaReport:
    """Each successive colon ((I^[q], m_1..m_{l-1}) : m_l) has reg <= 2 + floor((n-q-1)/2).

    For generators with whiskers, reg I(G^M \\ S) obeys the same bound, with
    an edgeless graph counted as regularity 1.
    """
    report = LemmaReport("colon-regularity", n, q)
    g = whisker(cycle(n))
    bound = 2 + max(0, (n - q - 1) // 2)
    gens = ordered_generators_whiskered_cycle(n, q)
    big = squarefree_power(g, q)
    running = big
    for ell, entry in enumerate(gens.entries):
        col = colon_by_monomial(running, entry.monomial)
        running = add(running, [entry.monomial])
        report.instances_checked += 1
        reg = regularity_of_ideal(col, field).regularity if not col.is_zero else 0
        if reg > bound:
            report.fail(f"l={ell}: colon reg {reg} > {bound}")
        if entry.block == 0:
            continue
        dec = decompose_even_connection_graph(n, entry.matching)
        gm = even_connection_graph(g, entry.matching)
        drop = [gm.index(g.labels[v]) for v in dec.s_union]
        rest = delete_vertices(gm, drop)
        reg_rest = regularity_of_graph(rest, field).regularity or 1
        if reg_rest > bound:
            report.fail(f"l={ell}: reg I(G^M - S) {reg_rest} > {bound}")
    return report
