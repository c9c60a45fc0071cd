import random

import pytest
from hypothesis import given, settings, strategies as st

from sqreg.even_connection import (
    EvenConnectionWitness,
    colon_ideal_of_matching,
    even_connected,
    even_connection_graph,
    even_graph_ideal,
    validate_witness,
    verify_colon_identity,
)
from sqreg.graph import (
    cycle,
    delete_vertices,
    disjoint_union,
    enumerate_matchings,
    from_edges,
    matching_support,
    path,
    whisker,
)
from sqreg.monomial import squarefree_power

from oracles import brute_colon, random_edges


def brute_even_pairs(g, m):
    """All even-connected pairs, by depth-first enumeration of alternating walks."""
    medges = [tuple(sorted(e)) for e in m]
    out = set()

    def walk(start, v, used, r):
        # v sits at an even position 2r; step along any edge, then maybe close
        for w in g.neighbors(v):
            if r >= 1 and w != start:
                out.add(frozenset((start, w)))
            for k, (a, b) in enumerate(medges):
                if used >> k & 1:
                    continue
                if w == a:
                    walk(start, b, used | 1 << k, r + 1)
                elif w == b:
                    walk(start, a, used | 1 << k, r + 1)

    for u in range(g.vertex_count):
        walk(u, u, 0, 0)
    return out


def brute_gm_edges(g, m):
    supp = matching_support(m)
    keep = [v for v in range(g.vertex_count) if not supp >> v & 1]
    pairs = {frozenset(e) for e in g.edges()} | brute_even_pairs(g, m)
    return {frozenset(g.labels[v] for v in p) for p in pairs if all(v in keep for v in p) and len(p) == 2}


def random_instance(rng, max_n=7, max_m=3):
    n = rng.randint(2, max_n)
    g = from_edges(n, random_edges(rng, n, rng.uniform(0.2, 0.7)))
    q = rng.randint(0, max_m)
    ms = enumerate_matchings(g, q)
    return g, (rng.choice(ms) if ms else ())


class TestEvenConnected:
    def test_path_through_middle_edge(self):
        w = even_connected(path(4), [(1, 2)], 0, 3)
        assert w == EvenConnectionWitness((0, 1, 2, 3), ((1, 2),))

    def test_empty_matching_never_connects(self):
        assert even_connected(path(4), [], 0, 2) is None

    def test_whiskers_of_an_edge(self):
        g = whisker(path(2))
        w = even_connected(g, [(0, 1)], g.index("y1"), g.index("y2"))
        assert [g.labels[v] for v in w.walk] == ["y1", "x1", "x2", "y2"]

    def test_errors(self):
        with pytest.raises(ValueError):
            even_connected(path(3), [(0, 1)], 0, 0)
        with pytest.raises(ValueError):
            even_connected(path(3), [(0, 1)], 0, 9)
        with pytest.raises(ValueError):
            even_connected(path(3), [(0, 2)], 0, 1)

    def test_multiplicity(self):
        # x1 x2 x3 x2 x3 x4 traverses x2x3 twice as an odd step
        g = path(5)
        w = EvenConnectionWitness((0, 1, 2, 1, 2, 3), ((1, 2), (1, 2)))
        assert not validate_witness(g, [(1, 2)], 0, 3, w)
        assert validate_witness(g, [(1, 2), (1, 2)], 0, 3, w)
        found = even_connected(g, [(1, 2), (1, 2)], 0, 3)
        assert found is not None and validate_witness(g, [(1, 2), (1, 2)], 0, 3, found)

    @settings(max_examples=80, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_witnesses_validate_and_agree_with_brute_force(self, rnd):
        g, m = random_instance(rnd)
        pairs = brute_even_pairs(g, m)
        for u in range(g.vertex_count):
            for v in range(g.vertex_count):
                if u == v:
                    continue
                w = even_connected(g, m, u, v)
                assert (w is not None) == (frozenset((u, v)) in pairs)
                if w is not None:
                    assert validate_witness(g, m, u, v, w)

    def test_validate_rejects_tampering(self):
        g = path(4)
        w = even_connected(g, [(1, 2)], 0, 3)
        assert not validate_witness(g, [(1, 2)], 0, 2, w)
        bad = EvenConnectionWitness((0, 1, 2, 3), ((0, 1),))
        assert not validate_witness(g, [(1, 2)], 0, 3, bad)
        assert not validate_witness(g, [(1, 2)], 0, 1, EvenConnectionWitness((0, 1), ()))


class TestGM:
    def test_perfect_matching_of_whiskered_square(self):
        g = whisker(cycle(4))
        gm = even_connection_graph(g, [(0, 1), (2, 3)])
        want = {frozenset(p) for p in [("y1", "y2"), ("y1", "y4"), ("y3", "y2"), ("y3", "y4")]}
        assert gm.edge_labels() == want

    def test_empty_matching_gives_the_graph(self):
        for g in (path(4), whisker(cycle(5))):
            assert even_connection_graph(g, []) == g

    def test_perfect_matching_of_whiskered_path(self):
        n = 6
        gm = even_connection_graph(whisker(path(n)), [(0, 1), (2, 3), (4, 5)])
        want = {frozenset((f"y{i}", f"y{j}")) for i in range(1, n + 1, 2) for j in range(2, n + 1, 2) if i < j}
        assert gm.edge_labels() == want

    def test_not_a_matching(self):
        with pytest.raises(ValueError):
            even_connection_graph(path(3), [(0, 1), (1, 2)])

    @settings(max_examples=80, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_edges_against_brute_force(self, rnd):
        g, m = random_instance(rnd)
        gm = even_connection_graph(g, m)
        assert gm.edge_labels() == brute_gm_edges(g, m)
        keep = [lab for v, lab in enumerate(g.labels) if not matching_support(m) >> v & 1]
        assert list(gm.labels) == keep
        # original edges away from the support survive
        for i, j in g.edges():
            if g.labels[i] in keep and g.labels[j] in keep:
                assert frozenset((g.labels[i], g.labels[j])) in gm.edge_labels()


class TestColonIdentity:
    def test_path_example(self):
        g = path(4)
        lhs = colon_ideal_of_matching(g, ((1, 2),))
        assert lhs == even_graph_ideal(g, ((1, 2),))
        assert lhs.generators == (0b1001,)

    def test_cycle_five(self):
        rep = verify_colon_identity(cycle(5), 1)
        assert (rep.instances_checked, rep.violations) == (5, 0)

    @pytest.mark.parametrize("q", [1, 2])
    def test_whiskered_triangle(self, q):
        assert verify_colon_identity(whisker(cycle(3)), q).ok

    def test_bad_q(self):
        with pytest.raises(ValueError):
            verify_colon_identity(path(3), 0)

    @settings(max_examples=40, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_against_brute_colon(self, rnd):
        g, m = random_instance(rnd, max_n=6)
        if not m:
            return
        big = squarefree_power(g, len(m) + 1)
        want = brute_colon(list(big.generators), g.vertex_count, matching_support(m))
        assert even_graph_ideal(g, m).generators == want


def _random_union(rng):
    parts = []
    for _ in range(rng.randint(2, 3)):
        n = rng.randint(1, 4)
        parts.append(from_edges(n, random_edges(rng, n, 0.6)))
    return parts


def test_disjoint_union_commutes_with_gm():
    rng = random.Random(11)
    for _ in range(60):
        parts = _random_union(rng)
        u = disjoint_union(parts)
        for m in enumerate_matchings(u, rng.randint(0, 3)):
            whole = even_connection_graph(u, m)
            pieces, off = [], 0
            for p in parts:
                local = tuple((i - off, j - off) for i, j in m if off <= i < off + p.vertex_count)
                gm = even_connection_graph(p, local)
                pieces.append(gm)
                off += p.vertex_count
            assert whole.edge_labels() == {
                frozenset(f"{lab}@{k}" for lab in e) for k, gm in enumerate(pieces) for e in gm.edge_labels()
            }


def test_deleting_a_free_vertex_commutes_with_gm():
    rng = random.Random(12)
    for _ in range(60):
        g, m = random_instance(rng, max_n=8)
        supp = matching_support(m)
        for x in range(g.vertex_count):
            if supp >> x & 1:
                continue
            left = delete_vertices(even_connection_graph(g, m), [even_connection_graph(g, m).index(g.labels[x])])
            h = delete_vertices(g, [x])
            pos = {lab: k for k, lab in enumerate(h.labels)}
            mh = tuple(sorted(tuple(sorted((pos[g.labels[i]], pos[g.labels[j]]))) for i, j in m))
            right = even_connection_graph(h, mh)
            assert left == right
