"""Even-connections with respect to a product of edges and the graph G^M.

For a product ``e_1 ... e_q`` (a matching, or more generally a list of edges
with repetition) two vertices ``u != v`` are even-connected when there is a
walk ``p_0 = u, p_1, ..., p_{2r+1} = v`` with ``r >= 1`` whose steps are edges
of G, whose odd steps ``(p_{2k+1}, p_{2k+2})`` are among the ``e_i``, and which
uses each edge no more often than it occurs in the product.

G^M lives on ``V(G) \\ Supp(M)``; its edges are the edges of G there plus all
even-connected pairs.  Colon ideals of squarefree powers by ``m_M`` are the
edge ideals of these graphs.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Edge, Graph, Matching, _bits, enumerate_matchings, induced_subgraph, is_matching, matching_support
from .monomial import MonomialIdeal, colon_by_monomial, edge_ideal, embed, squarefree_power


@dataclass(frozen=True)
class EvenConnectionWitness:
    walk: tuple[int, ...]
    odd_step_edges: tuple[Edge, ...]

    @property
    def r(self) -> int:
        return len(self.odd_step_edges)


def _norm(e: Sequence[int]) -> Edge:
    i, j = e
    return (i, j) if i < j else (j, i)


class _Product:
    """Distinct edges of a product with their multiplicities."""

    def __init__(self, edges: Sequence[Sequence[int]]):
        counts = Counter(_norm(e) for e in edges)
        self.edges = sorted(counts)
        self.caps = tuple(counts[e] for e in self.edges)
        # incident[v] lists (slot, other endpoint) for product edges at v
        self.incident: dict[int, list[tuple[int, int]]] = {}
        for slot, (i, j) in enumerate(self.edges):
            self.incident.setdefault(i, []).append((slot, j))
            self.incident.setdefault(j, []).append((slot, i))


def _search(g: Graph, prod: _Product, u: int, target: int | None):
    """BFS over (vertex, usage, phase) from ``u``.

    Phase 0: at an even walk position, next step is any edge of G.
    Phase 1: at an odd position, next step must be an unused product edge.
    Returns (parents, reached) where ``reached`` maps every vertex hit at an
    odd position with ``r >= 1`` to its state.
    """
    zero = tuple(0 for _ in prod.caps)
    start = (u, zero, 0)
    parents: dict[tuple, tuple | None] = {start: None}
    reached: dict[int, tuple] = {}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, used, phase = state
        if phase == 0:
            for w in _bits(g.adj[v]):
                nxt = (w, used, 1)
                if nxt in parents:
                    continue
                parents[nxt] = state
                if any(used) and w != u and w not in reached:
                    reached[w] = nxt
                    if w == target:
                        return parents, reached
                queue.append(nxt)
        else:
            for slot, w in prod.incident.get(v, ()):
                if used[slot] >= prod.caps[slot]:
                    continue
                bumped = used[:slot] + (used[slot] + 1,) + used[slot + 1 :]
                nxt = (w, bumped, 0)
                if nxt not in parents:
                    parents[nxt] = state
                    queue.append(nxt)
    return parents, reached


def _rebuild(parents: dict, state: tuple) -> list[int]:
    walk = []
    while state is not None:
        walk.append(state[0])
        state = parents[state]
    return walk[::-1]


def even_connected(g: Graph, m: Sequence[Sequence[int]], u: int, v: int) -> EvenConnectionWitness | None:
    """A shortest even-connection from ``u`` to ``v``, or ``None``."""
    n = g.vertex_count
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertices {u}, {v} must lie in 0..{n - 1}")
    if u == v:
        raise ValueError("even-connections join distinct vertices")
    prod = _Product(m)
    for i, j in prod.edges:
        if not g.has_edge(i, j):
            raise ValueError(f"({i}, {j}) is not an edge of the graph")
    parents, reached = _search(g, prod, u, v)
    if v not in reached:
        return None
    walk = _rebuild(parents, reached[v])
    odd = tuple(_norm((walk[2 * k + 1], walk[2 * k + 2])) for k in range((len(walk) - 2) // 2))
    return EvenConnectionWitness(tuple(walk), odd)


def validate_witness(g: Graph, m: Sequence[Sequence[int]], u: int, v: int, w: EvenConnectionWitness) -> bool:
    """Check the four defining conditions of an even-connection directly."""
    p = w.walk
    if len(p) < 4 or len(p) % 2:
        return False
    r = (len(p) - 2) // 2
    if p[0] != u or p[-1] != v:
        return False
    if not all(g.has_edge(p[k], p[k + 1]) for k in range(2 * r + 1)):
        return False
    product = [_norm(e) for e in m]
    steps = [_norm((p[2 * k + 1], p[2 * k + 2])) for k in range(r)]
    if any(s not in product for s in steps):
        return False
    if tuple(steps) != tuple(w.odd_step_edges):
        return False
    have, need = Counter(product), Counter(steps)
    return all(need[e] <= have[e] for e in need)


def even_connection_graph(g: Graph, m: Matching | Sequence[Edge]) -> Graph:
    """G^M, keeping the labels and relative vertex order of ``g``."""
    m = [_norm(e) for e in m]
    if not is_matching(g, m):
        raise ValueError("M must be a matching of G")
    support = matching_support(m)
    keep = g.all_mask & ~support
    sub, vmap = induced_subgraph(g, keep)
    if not m:
        return sub
    prod = _Product(m)
    pos = {v: k for k, v in enumerate(vmap)}
    adj = list(sub.adj)
    for u in vmap:
        _, reached = _search(g, prod, u, None)
        for w in reached:
            if keep >> w & 1:
                adj[pos[u]] |= 1 << pos[w]
                adj[pos[w]] |= 1 << pos[u]
    return Graph(sub.labels, tuple(adj))


def colon_ideal_of_matching(g: Graph, m: Matching) -> MonomialIdeal:
    """``I(G)^[q+1] : m_M`` computed directly from the squarefree power."""
    return colon_by_monomial(squarefree_power(g, len(m) + 1), matching_support(m))


def even_graph_ideal(g: Graph, m: Matching) -> MonomialIdeal:
    """``I(G^M)`` inside the variable universe of ``g``."""
    gm = even_connection_graph(g, m)
    vmap = [g.index(lab) for lab in gm.labels]
    return embed(edge_ideal(gm), vmap, g.vertex_count)


@dataclass
class ColonIdentityReport:
    q: int
    instances_checked: int = 0
    counterexamples: list[Matching] = field(default_factory=list)
    degree_violations: list[Matching] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return len(self.counterexamples) + len(self.degree_violations)

    @property
    def ok(self) -> bool:
        return self.violations == 0


def verify_colon_identity(g: Graph, q: int) -> ColonIdentityReport:
    """Compare ``I(G)^[q+1] : m_M`` with ``I(G^M)`` for every q-matching M."""
    if q < 1:
        raise ValueError("q must be positive")
    report = ColonIdentityReport(q)
    bigger = squarefree_power(g, q + 1)
    for m in enumerate_matchings(g, q):
        lhs = colon_by_monomial(bigger, matching_support(m))
        rhs = even_graph_ideal(g, m)
        report.instances_checked += 1
        if lhs != rhs:
            report.counterexamples.append(m)
        if any(d != 2 for d in lhs.degrees()):
            report.degree_violations.append(m)
    return report
