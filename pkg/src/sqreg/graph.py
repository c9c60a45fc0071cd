"""Finite simple graphs on at most 64 labelled vertices.

Vertices are integer indices ``0 .. n-1``; each carries a string label
(``x1``, ``y3``, ...).  Adjacency is stored as one integer bitmask per
vertex, so vertex subsets are plain ``int`` masks throughout the package.

Edges are ``(i, j)`` tuples with ``i < j`` and a matching is a sorted tuple
of edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 64

Edge = tuple[int, int]
Matching = tuple[Edge, ...]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    return list(_bits(mask))


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    labels: tuple[str, ...]
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n > MAX_VERTICES:
            raise ValueError(f"graph has {n} vertices; the cap is {MAX_VERTICES}")
        if len(self.adj) != n:
            raise ValueError("adjacency length does not match label count")
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be unique")
        for i, row in enumerate(self.adj):
            if row >> n:
                raise ValueError(f"vertex {i} is adjacent to an unknown vertex")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def edges(self) -> list[Edge]:
        """Edges in lexicographic order."""
        return [(i, j) for i in range(len(self.adj)) for j in _bits(self.adj[i] >> (i + 1) << (i + 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def label_set(self, mask: int) -> list[str]:
        return [self.labels[v] for v in _bits(mask)]

    def edge_labels(self) -> set[frozenset[str]]:
        return {frozenset((self.labels[i], self.labels[j])) for i, j in self.edges()}

    def __str__(self) -> str:
        es = ", ".join(f"{self.labels[i]}{self.labels[j]}" for i, j in self.edges())
        return f"Graph({len(self.labels)} vertices; {es})"


def from_edges(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Graph:
    """Build a graph on ``n`` vertices from 0-based edge pairs."""
    adj = [0] * n
    for e in edges:
        i, j = e
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge {tuple(e)} has an endpoint outside 0..{n - 1}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    if labels is None:
        labels = [f"x{i + 1}" for i in range(n)]
    return Graph(tuple(labels), tuple(adj))


def empty_graph(n: int = 0, labels: Sequence[str] | None = None) -> Graph:
    return from_edges(n, [], labels)


def path(n: int) -> Graph:
    """The path x1 x2 ... xn."""
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """The cycle x1 x2 ... xn x1."""
    if n < 3:
        raise ValueError(f"a simple cycle needs at least 3 vertices, got {n}")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def _whisker_label(label: str) -> str:
    return "y" + label[1:] if label.startswith("x") else "y" + label


def whisker(g: Graph) -> Graph:
    """Attach a pendant vertex to every vertex of ``g``.

    The new vertex for index ``i`` gets index ``i + n`` and the label ``y<k>``
    when the original label is ``x<k>``.
    """
    n = g.vertex_count
    edges = g.edges() + [(i, i + n) for i in range(n)]
    labels = list(g.labels) + [_whisker_label(lab) for lab in g.labels]
    return from_edges(2 * n, edges, labels)


def relabel(g: Graph, labels: Sequence[str]) -> Graph:
    return Graph(tuple(labels), g.adj)


def block_offsets(gs: Sequence[Graph]) -> list[int]:
    """Index offset of each graph inside ``disjoint_union(gs)``."""
    offsets, total = [], 0
    for g in gs:
        offsets.append(total)
        total += g.vertex_count
    return offsets


def disjoint_union(gs: Sequence[Graph], tag: bool = True) -> Graph:
    """Disjoint union; graph ``k`` occupies indices ``offset_k ...``.

    Labels are kept when they are already distinct across the inputs.  On a
    collision they are tagged ``<label>@<k>`` when ``tag`` is true, otherwise
    a ``ValueError`` is raised.
    """
    labels: list[str] = []
    adj: list[int] = []
    for off, g in zip(block_offsets(gs), gs):
        labels.extend(g.labels)
        adj.extend(row << off for row in g.adj)
    if len(set(labels)) != len(labels):
        if not tag:
            raise ValueError("vertex labels collide across the union")
        labels = [f"{lab}@{k}" for k, g in enumerate(gs) for lab in g.labels]
    return Graph(tuple(labels), tuple(adj))


def _check_mask(g: Graph, mask: int) -> None:
    if mask >> g.vertex_count:
        bad = [v for v in _bits(mask) if v >= g.vertex_count]
        raise ValueError(f"unknown vertex indices {bad}")


def induced_subgraph(g: Graph, keep: int) -> tuple[Graph, list[int]]:
    """Subgraph induced on the vertex mask ``keep``, plus the index map."""
    _check_mask(g, keep)
    vmap = bits(keep)
    pos = {v: k for k, v in enumerate(vmap)}
    adj = []
    for v in vmap:
        row = 0
        for u in _bits(g.adj[v] & keep):
            row |= 1 << pos[u]
        adj.append(row)
    return Graph(tuple(g.labels[v] for v in vmap), tuple(adj)), vmap


def delete_vertices(g: Graph, u: Iterable[int] | int) -> Graph:
    """The induced subgraph ``G \\ U``; ``u`` is an index iterable or a mask."""
    mask = u if isinstance(u, int) else to_mask(u)
    _check_mask(g, mask)
    return induced_subgraph(g, g.all_mask & ~mask)[0]


def closed_neighborhood(g: Graph, a: Iterable[int] | int) -> frozenset[int]:
    mask = a if isinstance(a, int) else to_mask(a)
    _check_mask(g, mask)
    out = mask
    for v in _bits(mask):
        out |= g.adj[v]
    return frozenset(_bits(out))


def matching_support(m: Iterable[Edge]) -> int:
    mask = 0
    for i, j in m:
        mask |= (1 << i) | (1 << j)
    return mask


def is_matching(g: Graph, m: Iterable[Edge]) -> bool:
    m = list(m)
    if not all(g.has_edge(i, j) for i, j in m):
        return False
    return matching_support(m).bit_count() == 2 * len(m)


def enumerate_matchings(g: Graph, q: int) -> list[Matching]:
    """All q-matchings of ``g`` in lexicographic order of sorted edge lists."""
    if q < 0:
        raise ValueError("q must be non-negative")
    edges = g.edges()
    out: list[Matching] = []

    def grow(start: int, used: int, chosen: list[Edge]) -> None:
        if len(chosen) == q:
            out.append(tuple(chosen))
            return
        for k in range(start, len(edges) - (q - len(chosen)) + 1):
            i, j = edges[k]
            bit = (1 << i) | (1 << j)
            if used & bit:
                continue
            chosen.append(edges[k])
            grow(k + 1, used | bit, chosen)
            chosen.pop()

    grow(0, 0, [])
    return out


def matching_number(g: Graph) -> int:
    adj = g.adj

    @lru_cache(maxsize=None)
    def nu(mask: int) -> int:
        while mask:
            v = (mask & -mask).bit_length() - 1
            if adj[v] & mask:
                break
            mask &= ~(1 << v)
        else:
            return 0
        rest = mask & ~(1 << v)
        best = nu(rest)
        for u in _bits(adj[v] & rest):
            best = max(best, 1 + nu(rest & ~(1 << u)))
        return best

    return nu(g.all_mask)


def induced_matching_number(g: Graph) -> int:
    edges = g.edges()
    adj = g.adj
    best = 0

    def grow(start: int, blocked: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + len(edges) - start <= best:
            return
        for k in range(start, len(edges)):
            i, j = edges[k]
            if blocked >> i & 1 or blocked >> j & 1:
                continue
            grow(k + 1, blocked | adj[i] | adj[j] | (1 << i) | (1 << j), size + 1)

    grow(0, 0, 0)
    return best


def independence_number(g: Graph) -> int:
    adj = g.adj

    @lru_cache(maxsize=None)
    def alpha(mask: int) -> int:
        if not mask:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        if not adj[v] & mask:
            return 1 + alpha(rest)
        return max(alpha(rest), 1 + alpha(rest & ~adj[v]))

    return alpha(g.all_mask)


def component_masks(g: Graph) -> list[int]:
    seen, out = 0, []
    for s in range(g.vertex_count):
        if seen >> s & 1:
            continue
        comp, frontier = 1 << s, 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(comp)
    return out


def components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components with their maps back to indices of ``g``."""
    return [induced_subgraph(g, mask) for mask in component_masks(g)]


def is_bipartite(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A bipartition ``(side0, side1)`` or ``None`` when an odd cycle exists."""
    colour: dict[int, int] = {}
    for s in range(g.vertex_count):
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in _bits(g.adj[v]):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return None
    side0 = tuple(v for v in range(g.vertex_count) if colour[v] == 0)
    side1 = tuple(v for v in range(g.vertex_count) if colour[v] == 1)
    return side0, side1


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph(g.labels, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def max_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum cardinality search (ties to the lowest index)."""
    n = g.vertex_count
    weight = [0] * n
    visited = 0
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not visited >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        visited |= 1 << v
        for u in _bits(g.adj[v] & ~visited):
            weight[u] += 1
    return order


def is_chordal(g: Graph) -> bool:
    # The reverse of an MCS order is a perfect elimination ordering iff g is chordal.
    visited = 0
    for v in max_cardinality_search(g):
        earlier = g.adj[v] & visited
        for u in _bits(earlier):
            if (earlier & ~(1 << u)) & ~g.adj[u]:
                return False
        visited |= 1 << v
    return True


def is_cochordal(g: Graph) -> bool:
    return is_chordal(complement(g))


def edges_1based(g: Graph) -> list[list[int]]:
    return [[i + 1, j + 1] for i, j in g.edges()]


def graph_from_spec(spec: dict) -> Graph:
    """Graph from a CLI spec such as ``{"family": "whiskered_cycle", "n": 5}``.

    ``{"family": "edges", "n": 4, "edges": [[1, 2], [2, 3]]}`` takes 1-based
    vertex indices.
    """
    if not isinstance(spec, dict):
        raise ValueError("graph spec must be a JSON object")
    family = spec.get("family")
    n = spec.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("graph spec needs a non-negative integer 'n'")
    if family == "path":
        return path(n)
    if family == "cycle":
        return cycle(n)
    if family == "whiskered_path":
        return whisker(path(n))
    if family == "whiskered_cycle":
        return whisker(cycle(n))
    if family == "edges":
        edges = spec.get("edges", [])
        if not isinstance(edges, list):
            raise ValueError("'edges' must be a list of 1-based pairs")
        pairs = []
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise ValueError(f"bad edge {e!r}; expected [i, j] with 1-based integers")
            pairs.append((e[0] - 1, e[1] - 1))
        return from_edges(n, pairs)
    raise ValueError(f"unknown graph family {family!r}")


def all_pairs(mask: int) -> Iterable[tuple[int, int]]:
    return combinations(bits(mask), 2)
