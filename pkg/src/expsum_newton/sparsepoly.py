"""Sparse multivariate polynomials in A_1..A_k over Q or over F_p."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._util import DomainError, as_fraction, format_rational, reduce_mod_p

Exponent = tuple[int, ...]


def grlex_key(m: Exponent):
    """Graded lexicographic order: total degree, then exponents left to right."""
    return (sum(m), m)


class SparsePoly:
    """Polynomial as a map exponent-vector -> nonzero coefficient.

    With ``modulus=None`` coefficients are Fractions; with a prime modulus they
    are ints in [0, modulus).  Zero coefficients are never stored, so equality
    of polynomials is equality of term maps.
    """

    __slots__ = ("nvars", "modulus", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = (), modulus: int | None = None):
        self.nvars = nvars
        self.modulus = modulus
        self.terms: dict[Exponent, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            self._accumulate(tuple(m), c)

    def _norm(self, c):
        if self.modulus is None:
            return as_fraction(c)
        return reduce_mod_p(c, self.modulus)

    def _accumulate(self, m: Exponent, c) -> None:
        if len(m) != self.nvars:
            raise DomainError(f"exponent {m} has wrong length for {self.nvars} variables")
        c = self._norm(c)
        total = self.terms.get(m, 0) + c
        if self.modulus is not None:
            total %= self.modulus
        if total:
            self.terms[m] = total
        else:
            self.terms.pop(m, None)

    @classmethod
    def constant(cls, nvars: int, c, modulus: int | None = None) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c}, modulus)

    @classmethod
    def variable(cls, nvars: int, k: int, modulus: int | None = None) -> "SparsePoly":
        """A_k for 1 <= k <= nvars."""
        m = [0] * nvars
        m[k - 1] = 1
        return cls(nvars, {tuple(m): 1}, modulus)

    def _compatible(self, other: "SparsePoly") -> None:
        if other.nvars != self.nvars or other.modulus != self.modulus:
            raise DomainError("incompatible polynomial rings")

    def copy(self) -> "SparsePoly":
        out = SparsePoly(self.nvars, modulus=self.modulus)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._compatible(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._accumulate(m, c)
        return out

    def __neg__(self) -> "SparsePoly":
        return self.scale(-1)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scale(self, c) -> "SparsePoly":
        c = self._norm(c)
        if not c:
            return SparsePoly(self.nvars, modulus=self.modulus)
        out = SparsePoly(self.nvars, modulus=self.modulus)
        if self.modulus is None:
            out.terms = {m: v * c for m, v in self.terms.items()}
        else:
            out.terms = {m: v * c % self.modulus for m, v in self.terms.items()}
        return out

    def __mul__(self, other) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        self._compatible(other)
        acc: dict[Exponent, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        out = SparsePoly(self.nvars, modulus=self.modulus)
        if self.modulus is None:
            out.terms = {m: c for m, c in acc.items() if c}
        else:
            q = self.modulus
            out.terms = {m: c % q for m, c in acc.items() if c % q}
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.nvars, self.modulus, self.terms) == (other.nvars, other.modulus, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.modulus, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Exponent]:
        return sorted(self.terms, key=grlex_key)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return [(m, self.terms[m]) for m in self.monomials()]

    def degrees(self) -> list[int]:
        return sorted({sum(m) for m in self.terms})

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def reduce(self, p: int) -> "SparsePoly":
        """Coefficientwise image mod p (coefficients must be p-integral)."""
        if self.modulus is not None:
            raise DomainError("already a polynomial over a finite field")
        return SparsePoly(self.nvars, self.terms, modulus=p)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise DomainError(f"expected {self.nvars} values")
        if self.modulus is None:
            pt = [as_fraction(v) for v in point]
            total = Fraction(0)
        else:
            pt = [reduce_mod_p(v, self.modulus) for v in point]
            total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(pt, m):
                if e:
                    term = term * v**e
            total += term
        if self.modulus is not None:
            total %= self.modulus
        return total

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in reversed(self.sorted_terms()):
            mono = "*".join(
                f"A{k + 1}" if e == 1 else f"A{k + 1}^{e}" for k, e in enumerate(m) if e
            )
            coeff = format_rational(c) if self.modulus is None else str(c)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        fmt = format_rational if self.modulus is None else str
        return [[list(m), fmt(c)] for m, c in self.sorted_terms()]
