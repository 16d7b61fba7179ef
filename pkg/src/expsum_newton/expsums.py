"""Exponential sums over F_{p^ell} and the L-polynomial they generate.

For f = x^d + a_{d-1} x^{d-1} + ... + a_1 x + a_0 and a prime p not dividing
d, the L-function exp(sum S_ell T^ell / ell) is a polynomial of degree d-1
over Z[zeta_p].  Here it is computed exactly from S_1..S_{d-1} by brute-force
enumeration, which is the ground truth every prediction is checked against.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._util import DomainError, as_fraction, format_rational, reduce_mod_p
from .cyclotomic import CyclotomicNumber, galois_conjugate, ord_p
from .finitefield import (
    ExtFieldSpec,
    check_budget,
    chunk_ranges,
    find_irreducible,
    trace_value_counts,
)
from .polygon import NewtonPolygon, lower_convex_hull


@dataclass(frozen=True)
class PolyInput:
    """Monic f of degree d with coefficients a_1..a_{d-1} and constant a0."""

    d: int
    coeffs: tuple[Fraction, ...]
    a0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.d < 3:
            raise DomainError("d must be at least 3")
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.d - 1:
            raise DomainError(f"expected {self.d - 1} coefficients a_1..a_{self.d - 1}, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "a0", as_fraction(self.a0))

    @classmethod
    def monomial(cls, d: int) -> "PolyInput":
        return cls(d, (0,) * (d - 1))

    def full_coeffs(self) -> list[Fraction]:
        """[a0, a1, ..., a_{d-1}, 1]."""
        return [self.a0, *self.coeffs, Fraction(1)]

    def mod_p(self, p: int) -> list[int]:
        if self.d % p == 0:
            raise DomainError("p must be coprime to d")
        return [reduce_mod_p(c, p) for c in self.full_coeffs()]

    def shifted(self, a0) -> "PolyInput":
        return PolyInput(self.d, self.coeffs, self.a0 + as_fraction(a0))

    def __str__(self):
        terms = [f"x^{self.d}"]
        for k in range(self.d - 1, 0, -1):
            c = self.coeffs[k - 1]
            if c:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if c == 1 else f"{format_rational(c)}*{mono}")
        if self.a0:
            terms.append(format_rational(self.a0))
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class LPolynomial:
    p: int
    d: int
    b: tuple[CyclotomicNumber, ...]
    S: tuple[CyclotomicNumber, ...] = field(default=(), compare=False)
    moduli: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.b) != self.d - 1:
            raise DomainError(f"expected {self.d - 1} coefficients, got {len(self.b)}")

    def coefficients(self) -> list[CyclotomicNumber]:
        """[b_0 = 1, b_1, ..., b_{d-1}]."""
        return [CyclotomicNumber.one(self.p), *self.b]

    def valuations(self) -> list:
        """ord_p(b_n) for n = 1..d-1 (``inf`` for zero coefficients)."""
        return [ord_p(bn) for bn in self.b]


def _counts_job(args):
    coeffs, p, ell, modulus, lo, hi = args
    return trace_value_counts(coeffs, ExtFieldSpec(p, ell, modulus), lo, hi)


def exp_sum(
    f: PolyInput,
    p: int,
    ell: int,
    budget: int | None = None,
    modulus: Sequence[int] | None = None,
    workers: int = 1,
) -> CyclotomicNumber:
    """S_ell(f mod p) = sum over x in F_{p^ell} of zeta_p^Tr(f(x))."""
    coeffs = f.mod_p(p)
    spec = ExtFieldSpec(p, ell, tuple(modulus) if modulus else ())
    check_budget(spec.order, budget)
    if workers > 1:
        jobs = [
            (coeffs, p, ell, spec.modulus, lo, hi)
            for lo, hi in chunk_ranges(spec.order, nchunks=workers)
        ]
        with ProcessPoolExecutor(workers) as pool:
            counts = sum(pool.map(_counts_job, jobs), np.zeros(p, dtype=np.int64))
    else:
        counts = trace_value_counts(coeffs, spec)
    return CyclotomicNumber.from_counts(counts.tolist())


def l_polynomial(
    f: PolyInput,
    p: int,
    budget: int | None = None,
    workers: int = 1,
) -> LPolynomial:
    """Exact L-polynomial via n b_n = sum_{l=1}^{n} S_l b_{n-l}."""
    d = f.d
    f.mod_p(p)
    check_budget(p ** (d - 1), budget)
    S = [exp_sum(f, p, ell, budget, workers=workers) for ell in range(1, d)]
    b = [CyclotomicNumber.one(p)]
    for n in range(1, d):
        acc = CyclotomicNumber.zero(p)
        for ell in range(1, n + 1):
            acc = acc + S[ell - 1] * b[n - ell]
        bn = acc / n
        if not bn.is_integral():
            raise AssertionError(f"b_{n} is not integral; is p = {p} coprime to d = {d}?")
        b.append(bn)
    return LPolynomial(
        p,
        d,
        tuple(b[1:]),
        tuple(S),
        tuple(find_irreducible(p, ell) for ell in range(1, d)),
    )


def newton_polygon(L: LPolynomial) -> NewtonPolygon:
    pts = [(0, Fraction(0))]
    pts += [(n, ord_p(bn)) for n, bn in enumerate(L.b, start=1) if not bn.is_zero()]
    return lower_convex_hull(pts)


def twist_by_constant(L: LPolynomial, a0) -> LPolynomial:
    """L(f + a0; T) = L(f; zeta^a0 T), i.e. b_n -> b_n zeta^(n a0)."""
    c = reduce_mod_p(a0, L.p)
    b = tuple(
        bn * CyclotomicNumber.zeta_power(L.p, n * c) for n, bn in enumerate(L.b, start=1)
    )
    S = tuple(
        s * CyclotomicNumber.zeta_power(L.p, ell * c) for ell, s in enumerate(L.S, start=1)
    )
    return LPolynomial(L.p, L.d, b, S, L.moduli)


def zeta_numerator(L: LPolynomial) -> list[int]:
    """Integer coefficients (low degree first) of prod_t sigma_t(L(T)).

    This is the numerator of the zeta function of y^p - y = f(x); its degree
    is (p-1)(d-1).
    """
    p = L.p
    base = L.coefficients()
    prod = base
    for t in range(2, p):
        conj = [galois_conjugate(c, t) for c in base]
        out = [CyclotomicNumber.zero(p) for _ in range(len(prod) + len(conj) - 1)]
        for i, x in enumerate(prod):
            if x.is_zero():
                continue
            for j, y in enumerate(conj):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        prod = out
    result = []
    for c in prod:
        assert c.is_rational() and c.is_integral(), "norm coefficient is not a rational integer"
        result.append(int(c.to_rational()))
    return result


def l_polynomial_to_json(f: PolyInput, L: LPolynomial) -> dict:
    return {
        "d": L.d,
        "p": L.p,
        "coeffs": [format_rational(c) for c in f.coeffs],
        "a0": format_rational(f.a0),
        "modulus_per_ell": [list(m) for m in L.moduli],
        "S": [s.to_json()["coeffs"] for s in L.S],
        "b": [bn.to_json()["coeffs"] for bn in L.b],
        "np_vertices": newton_polygon(L).to_json(),
    }


def l_polynomial_from_json(obj: dict) -> LPolynomial:
    p, d = int(obj["p"]), int(obj["d"])
    b = tuple(CyclotomicNumber.from_json({"p": p, "coeffs": c}) for c in obj["b"])
    S = tuple(CyclotomicNumber.from_json({"p": p, "coeffs": c}) for c in obj["S"])
    moduli = tuple(tuple(m) for m in obj.get("modulus_per_ell", ()))
    return LPolynomial(p, d, b, S, moduli)
