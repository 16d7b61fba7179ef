"""Shared exceptions and exact-rational helpers."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Inconsistent arguments (e.g. mixing values over different primes)."""


class PreconditionError(ValueError):
    """A quantitative bound required by an operation does not hold."""


class BudgetError(RuntimeError):
    """Refusal to enumerate more field elements than the configured budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration of {required} elements exceeds budget {budget}; "
            f"raise the budget to at least {required}"
        )


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    """Render ``x`` as ``"num/den"`` in lowest terms, or ``"num"`` when integral."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_rational_list(s: str) -> tuple[Fraction, ...]:
    s = s.strip()
    if not s:
        return ()
    return tuple(parse_rational(part) for part in s.split(","))


def is_p_integral(x, p: int) -> bool:
    return as_fraction(x).denominator % p != 0


def reduce_mod_p(x, p: int) -> int:
    """Image of a p-integral rational in F_p."""
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise DomainError(f"{format_rational(x)} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def padic_valuation(n, p: int) -> int:
    """Ordinary p-adic valuation of a nonzero rational."""
    x = as_fraction(n)
    if x == 0:
        raise DomainError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if is_prime(q)]


def rational_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)
