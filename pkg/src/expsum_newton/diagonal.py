"""Newton polygon of x^d from the cycle structure of n -> r n mod d."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._util import DomainError, format_rational
from .polygon import NewtonPolygon, join_segments


@dataclass(frozen=True)
class Cycle:
    members: tuple[int, ...]
    slope: Fraction

    @property
    def length(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CycleData:
    d: int
    r: int
    cycles: tuple[Cycle, ...]

    def segments(self) -> list[tuple[Fraction, int]]:
        return [(c.slope, c.length) for c in self.cycles]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "cycles": [
                {"members": list(c.members), "length": c.length, "slope": format_rational(c.slope)}
                for c in self.cycles
            ],
            "np_vertices": diagonal_polygon(self.d, self.r).to_json(),
        }


def _check(d: int, r: int) -> None:
    if d < 3:
        raise DomainError("d must be at least 3")
    if not 1 <= r <= d - 1 or math.gcd(r, d) != 1:
        raise DomainError(f"r = {r} must lie in [1, d-1] and be coprime to d = {d}")


def cycle_data(d: int, r: int) -> CycleData:
    _check(d, r)
    seen = set()
    cycles = []
    for start in range(1, d):
        if start in seen:
            continue
        members = []
        n = start
        while n not in seen:
            seen.add(n)
            members.append(n)
            n = r * n % d
        cycles.append(Cycle(tuple(members), Fraction(sum(members), d * len(members))))
    cycles.sort(key=lambda c: (c.slope, c.length, c.members))
    return CycleData(d, r, tuple(cycles))


def diagonal_polygon(d: int, r: int) -> NewtonPolygon:
    """NP(x^d mod p) for any prime p = r mod d."""
    return join_segments(cycle_data(d, r).segments())


def nonconvergence_witness(d: int) -> tuple[int, int] | None:
    """Two residue classes mod d whose x^d polygons differ.

    Class 1 gives only fixed points; any other class coprime to d has a longer
    cycle, so the smallest such class always works for d >= 3.
    """
    if d < 3:
        raise DomainError("d must be at least 3")
    base = diagonal_polygon(d, 1)
    for r in range(2, d):
        if math.gcd(r, d) == 1 and diagonal_polygon(d, r) != base:
            return (1, r)
    return None
