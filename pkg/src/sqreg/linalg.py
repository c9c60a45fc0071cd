"""Exact matrix rank over GF(2) and over the rationals.

Matrices are given row by row.  GF(2) rows are bit-packed Python integers
(column ``c`` is bit ``c``).  Rational rows are sparse ``{column: int}``
dicts; elimination is fraction-free and every reduced row is divided by the
gcd of its entries, so intermediate integers stay small on the sparse
boundary matrices this package produces.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


def gf2_rank(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            p = pivots.get(low)
            if p is None:
                pivots[low] = row
                break
            row ^= p
    return len(pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()}


def rational_rank(rows: Iterable[Mapping[int, int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free row reduction."""
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        row = {k: v for k, v in src.items() if v}
        while row:
            col = min(row)
            p = pivots.get(col)
            if p is None:
                pivots[col] = _primitive(row)
                break
            a, b = row[col], p[col]
            # row <- b*row - a*p clears column col exactly
            new = {k: b * v for k, v in row.items()}
            for k, v in p.items():
                new[k] = new.get(k, 0) - a * v
            row = _primitive({k: v for k, v in new.items() if v})
    return len(pivots)


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of a dense integer matrix by Bareiss elimination (small inputs)."""
    a = [list(r) for r in matrix]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, rows):
            for k in range(c + 1, cols):
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) // prev
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == rows:
            break
    return rank
