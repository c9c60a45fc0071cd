"""Squarefree monomial ideals over a fixed variable universe.

A squarefree monomial is its support bitmask (variable ``k`` is bit ``k``;
the monomial 1 is ``0``).  Ideals keep only minimal generators, sorted by
the integer value of their supports.  The zero ideal has no generators and
the unit ideal is the single generator ``0``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, _bits, enumerate_matchings, matching_support


def minimalize(monomials: Iterable[int]) -> tuple[int, ...]:
    """Drop every monomial divisible by another one; canonical order."""
    kept: list[int] = []
    for m in sorted(set(monomials), key=lambda m: (m.bit_count(), m)):
        if not any(g & ~m == 0 for g in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    universe_size: int
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if g >> self.universe_size:
                raise ValueError(f"generator {g:#x} uses a variable outside the universe")
        if minimalize(self.generators) != self.generators:
            raise ValueError("generators must be minimal and in canonical order")

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == (0,)

    @property
    def support(self) -> int:
        out = 0
        for g in self.generators:
            out |= g
        return out

    def degrees(self) -> list[int]:
        return [g.bit_count() for g in self.generators]

    def format(self, labels: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(monomial_str(g, labels) for g in self.generators) + ")"


def monomial_str(m: int, labels: Sequence[str] | None = None) -> str:
    if not m:
        return "1"
    return "".join(labels[v] if labels else f"x{v + 1}" for v in _bits(m))


def ideal(universe_size: int, monomials: Iterable[int]) -> MonomialIdeal:
    return MonomialIdeal(universe_size, minimalize(monomials))


def zero_ideal(universe_size: int) -> MonomialIdeal:
    return MonomialIdeal(universe_size, ())


def unit_ideal(universe_size: int) -> MonomialIdeal:
    return MonomialIdeal(universe_size, (0,))


def edge_ideal(g: Graph) -> MonomialIdeal:
    return ideal(g.vertex_count, ((1 << i) | (1 << j) for i, j in g.edges()))


def squarefree_power(g: Graph, q: int) -> MonomialIdeal:
    """The ideal generated by the supports of all q-matchings of ``g``."""
    if q < 1:
        raise ValueError("squarefree powers are defined for q >= 1")
    return ideal(g.vertex_count, (matching_support(m) for m in enumerate_matchings(g, q)))


def _same_universe(i: MonomialIdeal, j: MonomialIdeal) -> None:
    if i.universe_size != j.universe_size:
        raise ValueError(f"universe mismatch: {i.universe_size} vs {j.universe_size}")


def _in_universe(i: MonomialIdeal, m: int) -> None:
    if m < 0 or m >> i.universe_size:
        raise ValueError(f"monomial {m:#x} is outside a universe of {i.universe_size} variables")


def colon_pair(mj: int, mi: int) -> int:
    """Generator of the principal colon ``(m_j) : (m_i)``, i.e. ``m_j / gcd``."""
    return mj & ~mi


def colon_by_monomial(i: MonomialIdeal, u: int) -> MonomialIdeal:
    _in_universe(i, u)
    return ideal(i.universe_size, (g & ~u for g in i.generators))


def add(i: MonomialIdeal, extra: Iterable[int]) -> MonomialIdeal:
    extra = list(extra)
    for m in extra:
        _in_universe(i, m)
    return ideal(i.universe_size, list(i.generators) + extra)


def ideal_sum(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _same_universe(i, j)
    return add(i, j.generators)


def contains(i: MonomialIdeal, m: int) -> bool:
    _in_universe(i, m)
    return any(g & ~m == 0 for g in i.generators)


def ideal_leq(i: MonomialIdeal, j: MonomialIdeal) -> bool:
    """True when ``i`` is contained in ``j``."""
    _same_universe(i, j)
    return all(contains(j, g) for g in i.generators)


def is_variable_generated(i: MonomialIdeal) -> bool:
    return generated_in_single_degree(i, 1)


def generated_in_single_degree(i: MonomialIdeal, d: int) -> bool:
    return all(g.bit_count() == d for g in i.generators)


def extend_universe(i: MonomialIdeal, universe_size: int) -> MonomialIdeal:
    if universe_size < i.universe_size:
        raise ValueError("cannot shrink the universe")
    return MonomialIdeal(universe_size, i.generators)


def embed(i: MonomialIdeal, vertex_map: Sequence[int], universe_size: int) -> MonomialIdeal:
    """Rename variable ``k`` of ``i`` to ``vertex_map[k]`` in a larger universe."""
    gens = []
    for g in i.generators:
        out = 0
        for v in _bits(g):
            out |= 1 << vertex_map[v]
        gens.append(out)
    return ideal(universe_size, gens)


def serialize(i: MonomialIdeal) -> dict:
    return {"universe_size": i.universe_size, "generators": [format(g, "x") for g in i.generators]}


def ideal_digest(i: MonomialIdeal, *extra: str) -> str:
    """SHA-256 over the canonical serialization plus any extra key parts."""
    payload = json.dumps([serialize(i), *extra], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()
