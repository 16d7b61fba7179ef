"""Exact arithmetic in the cyclotomic field Q(zeta_p).

Elements are stored in the power basis ``1, zeta, ..., zeta^(p-2)``; anything
of higher degree is reduced modulo ``Phi_p(x) = 1 + x + ... + x^(p-1)``.
Internally a value is an integer numerator vector over one positive common
denominator, which keeps multiplication on plain Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from ._util import DomainError, UsageError, as_fraction, format_rational, padic_valuation

INFINITY = math.inf


def _fold(vec: Sequence[int], p: int) -> list[int]:
    """Reduce an integer vector indexed by powers of zeta to the power basis."""
    full = [0] * p
    for k, c in enumerate(vec):
        if c:
            full[k % p] += c
    top = full[p - 1]
    if top:
        return [c - top for c in full[: p - 1]]
    return full[: p - 1]


class CyclotomicNumber:
    """An element ``sum c_k zeta_p^k`` of Q(zeta_p), immutable."""

    __slots__ = ("p", "_num", "_den", "_hash")

    def __init__(self, p: int, coeffs: Iterable = ()):
        if p < 3 or p % 2 == 0:
            raise DomainError(f"p must be an odd prime, got {p}")
        fr = [as_fraction(c) for c in coeffs]
        den = reduce(math.lcm, (c.denominator for c in fr), 1)
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(p, _fold(num, p), den)

    def _set(self, p: int, num: list[int], den: int) -> None:
        g = reduce(math.gcd, num, den)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.p = p
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, p: int, num: list[int], den: int = 1) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        if den < 0:
            num, den = [-c for c in num], -den
        obj._set(p, num, den)
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CyclotomicNumber":
        return cls._raw(p, [0] * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CyclotomicNumber":
        return cls.from_rational(p, 1)

    @classmethod
    def from_rational(cls, p: int, x) -> "CyclotomicNumber":
        x = as_fraction(x)
        return cls._raw(p, [x.numerator] + [0] * (p - 2), x.denominator)

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CyclotomicNumber":
        vec = [0] * p
        vec[k % p] = 1
        return cls._raw(p, _fold(vec, p))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "CyclotomicNumber":
        """``sum_v counts[v] * zeta^v`` for a length-p count vector."""
        p = len(counts)
        return cls._raw(p, _fold([int(c) for c in counts], p))

    # -- accessors ------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_integral(self) -> bool:
        return self._den == 1

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("value is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "CyclotomicNumber") -> None:
        if other.p != self.p:
            raise UsageError(f"prime mismatch: {self.p} vs {other.p}")

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            self._check(other)
            return other
        return CyclotomicNumber.from_rational(self.p, other)

    def __add__(self, other):
        other = self._coerce(other)
        den = math.lcm(self._den, other._den)
        u, v = den // self._den, den // other._den
        return CyclotomicNumber._raw(
            self.p, [a * u + b * v for a, b in zip(self._num, other._num)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.p, [-a for a in self._num], self._den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            x = as_fraction(other)
            return CyclotomicNumber._raw(
                self.p, [a * x.numerator for a in self._num], self._den * x.denominator
            )
        self._check(other)
        p = self.p
        out = [0] * (2 * p - 3)
        for i, a in enumerate(self._num):
            if a:
                for j, b in enumerate(other._num):
                    if b:
                        out[i + j] += a * b
        return CyclotomicNumber._raw(p, _fold(out, p), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        x = as_fraction(other)
        if x == 0:
            raise DomainError("division by zero")
        return self * (1 / x)

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not supported")
        result = CyclotomicNumber.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.p == other.p and self._num == other._num and self._den == other._den
        try:
            x = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and Fraction(self._num[0], self._den) == x

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self._num, self._den))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(format_rational(c) + ("" if k == 0 else f"*z^{k}"))
        return f"CyclotomicNumber(p={self.p}, {' + '.join(terms) or '0'})"

    # -- Galois structure -------------------------------------------------

    def conjugate(self, t: int) -> "CyclotomicNumber":
        """Image under the automorphism ``zeta -> zeta^t``."""
        return galois_conjugate(self, t)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicNumber":
        p = int(obj["p"])
        coeffs = [Fraction(c) for c in obj["coeffs"]]
        if len(coeffs) != p - 1:
            raise DomainError(f"expected {p - 1} coefficients, got {len(coeffs)}")
        return cls(p, coeffs)


def galois_conjugate(a: CyclotomicNumber, t: int) -> CyclotomicNumber:
    p = a.p
    if t % p == 0:
        raise DomainError(f"t = {t} is divisible by p = {p}")
    vec = [0] * p
    for k, c in enumerate(a.numerators):
        if c:
            vec[(k * t) % p] += c
    return CyclotomicNumber._raw(p, _fold(vec, p), a.denominator)


def norm_to_rational(a: CyclotomicNumber) -> Fraction:
    """N_{Q(zeta_p)/Q}(a) as the product of all p-1 conjugates."""
    p = a.p
    prod = a
    for t in range(2, p):
        prod = prod * galois_conjugate(a, t)
    # a non-rational product means the arithmetic is broken somewhere
    assert prod.is_rational(), "norm did not collapse to a rational"
    return prod.to_rational()


def ord_p(a: CyclotomicNumber):
    """Valuation normalized by ``ord_p(p) = 1``; ``INFINITY`` for zero."""
    if a.is_zero():
        return INFINITY
    return Fraction(padic_valuation(norm_to_rational(a), a.p), a.p - 1)
