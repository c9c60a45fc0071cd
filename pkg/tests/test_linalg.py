import random

import sympy
from hypothesis import given, settings, strategies as st

from sqreg.linalg import bareiss_rank, gf2_rank, rational_rank

matrices = st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=7)
)


def pack(row):
    return sum(1 << k for k, v in enumerate(row) if v % 2)


def sparse(row):
    return {k: v for k, v in enumerate(row) if v}


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rational_rank_against_sympy(mat):
    want = sympy.Matrix(mat).rank()
    assert rational_rank(sparse(r) for r in mat) == want
    assert bareiss_rank(mat) == want


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_gf2_rank_against_dense_elimination(mat):
    rows = [[v % 2 for v in r] for r in mat]
    rank, cols = 0, len(rows[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    assert gf2_rank(pack(r) for r in mat) == rank


def test_known_ranks():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b11, 0b11, 0b01]) == 2
    assert rational_rank([]) == 0
    assert rational_rank([{0: 2, 1: 4}, {0: 1, 1: 2}]) == 1
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([]) == 0
    # [[1,1],[1,-1]] has rank 2 over Q but 1 over GF(2)
    assert rational_rank([{0: 1, 1: 1}, {0: 1, 1: -1}]) == 2
    assert gf2_rank([0b11, 0b11]) == 1


def test_large_sparse_boundary_like():
    rng = random.Random(3)
    rows = []
    for _ in range(60):
        cols = rng.sample(range(40), 3)
        rows.append({c: rng.choice([-1, 1]) for c in cols})
    dense = [[r.get(c, 0) for c in range(40)] for r in rows]
    assert rational_rank(rows) == sympy.Matrix(dense).rank() == bareiss_rank(dense)
