"""Generic-coefficient predictor for the p-adic valuations of b_1..b_{d-1}.

For p = r mod d the valuation of b_n is governed by a residue matrix
(r_ij), the minimal ceiling sum M_n, and the least index t_n at which a
certain signed sum of products of the rational polynomials H^s_ij is not
identically zero.  When the coefficient vector avoids the zero loci of these
detecting polynomials (and p is large), ord_p b_n = (M_n + t_n)/(p - 1).

Indices i, j, n run from 1 as in the formulas; matrices are stored 0-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from sympy import factorint

from ._util import (
    DomainError,
    PreconditionError,
    format_rational,
    is_p_integral,
    reduce_mod_p,
    rational_vector,
)
from .sparsepoly import SparsePoly, grlex_key


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def coprime_residues(d: int) -> list[int]:
    return [r for r in range(1, d) if math.gcd(r, d) == 1]


def large_prime_bound(d: int) -> int:
    """(d^2 + 1)(d - 1): the size of p the valuation argument needs."""
    return (d * d + 1) * (d - 1)


# -- residue matrix -------------------------------------------------------------


@dataclass(frozen=True)
class ResidueMatrix:
    d: int
    r: int
    entries: tuple[tuple[int, ...], ...]
    J: tuple[int, ...]
    delta: tuple[tuple[int, ...], ...]

    def rij(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    def dij(self, i: int, j: int) -> int:
        return self.delta[i - 1][j - 1]


@lru_cache(maxsize=None)
def residue_matrix(d: int, r: int) -> ResidueMatrix:
    if d < 3:
        raise DomainError("d must be at least 3")
    if not 1 <= r <= d - 1 or math.gcd(r, d) != 1:
        raise DomainError(f"r = {r} must lie in [1, d-1] and be coprime to d = {d}")
    size = d - 1
    entries = tuple(
        tuple(d * _ceil_div(r * i - j, d) - (r * i - j) for j in range(1, d)) for i in range(1, d)
    )
    J = tuple(row.index(0) + 1 for row in entries)
    # delta_ij = ceil((pi-1)/d) - ceil((pi-j)/d): one exactly when J_i > 1 and j >= J_i
    delta = tuple(tuple(int(row[j] < row[0]) for j in range(size)) for row in entries)
    assert all(len(set(row)) == size for row in entries)
    return ResidueMatrix(d, r, entries, J, delta)


# -- index sets M^s_ij ------------------------------------------------------------


def weighted_vectors(d: int, target: int) -> list[tuple[int, ...]]:
    """All m in Z_{>=0}^{d-1} with sum_k (d - k) m_k = target, in graded-lex order."""
    out: list[tuple[int, ...]] = []

    def rec(k: int, remaining: int, prefix: list[int]) -> None:
        if k == d:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        w = d - k
        for mk in range(remaining // w + 1):
            prefix.append(mk)
            rec(k + 1, remaining - w * mk, prefix)
            prefix.pop()

    rec(1, target, [])
    return sorted(out, key=grlex_key)


def m_set(d: int, i: int, j: int, s: int, matrix: ResidueMatrix) -> list[tuple[int, ...]]:
    if not 0 <= s <= d - 1:
        raise DomainError("s must lie in [0, d-1]")
    return weighted_vectors(d, matrix.rij(i, j) + d * s)


def _mfact(m: Sequence[int]) -> int:
    out = 1
    for k in m:
        out *= math.factorial(k)
    return out


# -- H and K polynomials --------------------------------------------------------------


def _check_indices(d: int, n: int, i: int, j: int, s: int) -> None:
    if not 1 <= n <= d - 1:
        raise DomainError(f"n = {n} outside [1, {d - 1}]")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"indices ({i}, {j}) outside [1, {n}]")
    if not 0 <= s <= n:
        raise DomainError(f"s = {s} outside [0, {n}]")


@lru_cache(maxsize=None)
def h_poly(d: int, r: int, n: int, i: int, j: int, s: int) -> SparsePoly:
    """H^s_ij: falling products from (r_i1 - 1)/d + n, one factor per step, over m!."""
    _check_indices(d, n, i, j, s)
    R = residue_matrix(d, r)
    top = Fraction(R.rij(i, 1) - 1, d) + n
    delta = R.dij(i, j)
    terms = {}
    for m in m_set(d, i, j, s, R):
        nfactors = n + delta - s + sum(m)
        # the empty-product case would need n = 0; it cannot occur for n >= 1
        assert nfactors >= 1
        coeff = Fraction(1)
        for k in range(nfactors):
            coeff *= top - k
        terms[m] = coeff / _mfact(m)
    return SparsePoly(d - 1, terms)


def k_poly(d: int, r: int, p: int, n: int, i: int, j: int, s: int) -> SparsePoly:
    """K^s_ij over F_p: sum of A^m / (m! (ceil((pi-j)/d) + s - |m|)!)."""
    _check_indices(d, n, i, j, s)
    if p % d != r:
        raise DomainError(f"p = {p} is not {r} mod {d}")
    if p < d * d:
        raise PreconditionError(f"K polynomials need p >= d^2 = {d * d}")
    R = residue_matrix(d, r)
    base = _ceil_div(p * i - j, d) + s
    terms = {}
    for m in m_set(d, i, j, s, R):
        arg = base - sum(m)
        if not 0 <= arg <= p - 1 or max(m) >= p:
            raise PreconditionError(
                f"factorial argument {arg} leaves [0, p-1]; need p >= {large_prime_bound(d)}"
            )
        denom = _mfact(m) * math.factorial(arg) % p
        terms[m] = pow(denom, -1, p)
    return SparsePoly(d - 1, terms, modulus=p)


# -- permutation strata -----------------------------------------------------------


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 1..n given by its images."""
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if not seen[start]:
            cycles += 1
            k = start
            while not seen[k]:
                seen[k] = True
                k = perm[k] - 1
    return -1 if (len(perm) - cycles) % 2 else 1


@dataclass(frozen=True)
class Strata:
    c_n: int
    min_sum: int
    max_sum: int
    strata: dict = field(hash=False)

    def __iter__(self):
        # unpacks as (c_n, strata)
        return iter((self.c_n, self.strata))


@lru_cache(maxsize=None)
def strata(d: int, r: int, n: int) -> Strata:
    """Partition S_n by sum_i r_{i, sigma(i)} = min + d t, t = 0..c_n."""
    if not 1 <= n <= d - 1:
        raise DomainError(f"n = {n} outside [1, {d - 1}]")
    R = residue_matrix(d, r)
    sums = {}
    for perm in itertools.permutations(range(1, n + 1)):
        sums[perm] = sum(R.rij(i, perm[i - 1]) for i in range(1, n + 1))
    lo, hi = min(sums.values()), max(sums.values())
    assert (hi - lo) % d == 0
    c_n = (hi - lo) // d
    groups: dict[int, list[tuple[int, ...]]] = {t: [] for t in range(c_n + 1)}
    for perm, total in sums.items():
        assert (total - lo) % d == 0
        groups[(total - lo) // d].append(perm)
    return Strata(c_n, lo, hi, groups)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative summands."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _stratum_sum(d: int, r: int, n: int, t: int, factor) -> object:
    """sum over s_0+..+s_n = t and sigma in stratum s_0 of sgn * prod factor(s_i, i, sigma(i))."""
    c_n, groups = strata(d, r, n)
    if not 0 <= t <= c_n:
        raise DomainError(f"t = {t} outside [0, c_n = {c_n}]")
    total = None
    for comp in compositions(t, n + 1):
        s0, rest = comp[0], comp[1:]
        for perm in groups[s0]:
            term = factor(rest[0], 1, perm[0]).scale(permutation_sign(perm))
            for i in range(2, n + 1):
                term = term * factor(rest[i - 1], i, perm[i - 1])
            total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def f_n_t(d: int, r: int, n: int, t: int) -> SparsePoly:
    """The detecting polynomial f_n^t, fully expanded."""
    out = _stratum_sum(d, r, n, t, lambda s, i, j: h_poly(d, r, n, i, j, s))
    return out if out is not None else SparsePoly(d - 1)


@lru_cache(maxsize=None)
def t_n(d: int, r: int, n: int) -> int:
    """Least t with f_n^t not identically zero."""
    c_n = strata(d, r, n).c_n
    for t in range(c_n + 1):
        if not f_n_t(d, r, n, t).is_zero():
            return t
    raise AssertionError(f"no nonzero f_{n}^t for t <= c_n = {c_n} (d={d}, r={r})")


# -- minimal ceiling sums ---------------------------------------------------------


def m_n_direct(d: int, n: int, p: int) -> int:
    return min(
        sum(_ceil_div(p * i - perm[i - 1], d) for i in range(1, n + 1))
        for perm in itertools.permutations(range(1, n + 1))
    )


def m_n(d: int, r: int, n: int, p: int) -> int:
    """M_n = n(n+1)(p-1)/(2d) + min_sigma sum r_{i,sigma(i)} / d."""
    if p % d != r:
        raise DomainError(f"p = {p} is not {r} mod {d}")
    closed = Fraction(n * (n + 1) * (p - 1), 2 * d) + Fraction(strata(d, r, n).min_sum, d)
    assert closed.denominator == 1, "M_n closed form is not an integer"
    direct = m_n_direct(d, n, p)
    assert closed == direct, f"M_n mismatch: closed form {closed}, direct {direct}"
    return int(closed)


# -- reports ------------------------------------------------------------------------------


@dataclass(frozen=True)
class PredictorRow:
    n: int
    M_n: int
    c_n: int
    t_n: int
    min_sigma_sum: int
    predicted_ord: Fraction
    epsilon_n: Fraction
    detecting_value: Fraction
    f_tn_nonzero_mod_p: bool
    bad_primes: tuple[int, ...] | None
    certified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "M_n": self.M_n,
            "c_n": self.c_n,
            "t_n": self.t_n,
            "min_sigma_sum": self.min_sigma_sum,
            "predicted_ord": format_rational(self.predicted_ord),
            "epsilon_n": format_rational(self.epsilon_n),
            "f_tn_value": format_rational(self.detecting_value),
            "bad_primes": None if self.bad_primes is None else list(self.bad_primes),
            "certified": self.certified,
        }


@dataclass(frozen=True)
class PredictorReport:
    d: int
    r: int
    p: int
    a: tuple[Fraction, ...]
    rows: tuple[PredictorRow, ...]
    p_coprime_d: bool
    p_large_enough: bool
    a_p_integral: bool

    @property
    def certified(self) -> bool:
        return all(row.certified for row in self.rows)

    def certificate(self) -> dict:
        return {
            "p_coprime_d": self.p_coprime_d,
            "p_large_enough": self.p_large_enough,
            "p_bound": large_prime_bound(self.d),
            "f_tn_nonzero_mod_p": {str(row.n): row.f_tn_nonzero_mod_p for row in self.rows},
            "a_p_integral": self.a_p_integral,
        }

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "p": self.p,
            "a": [format_rational(x) for x in self.a],
            "rows": [row.to_json() for row in self.rows],
            "certificate": self.certificate(),
        }


def _prime_support(x: Fraction) -> tuple[int, ...]:
    primes = set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    return tuple(sorted(primes))


def detecting_values(d: int, r: int, a: Sequence) -> dict[int, Fraction]:
    """f_n^{t_n}(a) for n = 1..d-1, as exact rationals."""
    a = rational_vector(a)
    if len(a) != d - 1:
        raise DomainError(f"expected {d - 1} coefficients")
    return {n: f_n_t(d, r, n, t_n(d, r, n)).evaluate(a) for n in range(1, d)}


def predict(d: int, a: Sequence, p: int) -> PredictorReport:
    a = rational_vector(a)
    if len(a) != d - 1:
        raise DomainError(f"expected {d - 1} coefficients a_1..a_{d - 1}")
    if math.gcd(p, d) != 1:
        raise DomainError("p must be coprime to d")
    if not all(is_p_integral(x, p) for x in a):
        raise DomainError(f"coefficients must be {p}-integral")
    r = p % d
    large = p >= large_prime_bound(d)
    values = detecting_values(d, r, a)
    units = {}
    for n, v in values.items():
        units[n] = v != 0 and is_p_integral(v, p) and reduce_mod_p(v, p) != 0
    all_pass = large and all(units.values())
    rows = []
    for n in range(1, d):
        st = strata(d, r, n)
        tn = t_n(d, r, n)
        Mn = m_n(d, r, n, p)
        predicted = Fraction(Mn + tn, p - 1)
        eps = Fraction(st.min_sum + d * tn, d * (p - 1))
        assert predicted == Fraction(n * (n + 1), 2 * d) + eps
        v = values[n]
        rows.append(
            PredictorRow(
                n=n,
                M_n=Mn,
                c_n=st.c_n,
                t_n=tn,
                min_sigma_sum=st.min_sum,
                predicted_ord=predicted,
                epsilon_n=eps,
                detecting_value=v,
                f_tn_nonzero_mod_p=units[n],
                bad_primes=None if v == 0 else _prime_support(v),
                certified=all_pass,
            )
        )
    return PredictorReport(d, r, p, a, tuple(rows), True, large, True)


@dataclass(frozen=True)
class WMembership:
    d: int
    a: tuple[Fraction, ...]
    by_residue: dict
    values: dict = field(hash=False)

    @property
    def member(self) -> bool:
        return all(self.by_residue.values())

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a": [format_rational(x) for x in self.a],
            "W": self.member,
            "by_residue": {str(r): ok for r, ok in self.by_residue.items()},
            "values": {
                str(r): {str(n): format_rational(v) for n, v in vals.items()}
                for r, vals in self.values.items()
            },
        }


def w_membership(d: int, a: Sequence) -> WMembership:
    """Whether a avoids every hypersurface f_n^{t_n} = 0, for each residue class."""
    if d < 3:
        raise DomainError("d must be at least 3")
    a = rational_vector(a)
    by_residue, values = {}, {}
    for r in coprime_residues(d):
        vals = detecting_values(d, r, a)
        values[r] = vals
        by_residue[r] = all(v != 0 for v in vals.values())
    return WMembership(d, a, by_residue, values)


# -- H/K congruence ------------------------------------------------------------------------


def u_n(d: int, p: int, n: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out = out * math.factorial(_ceil_div(p * i - 1, d) + n) % p
    return out


def hk_congruence_table(d: int, p: int, a: Sequence[int]) -> list[dict]:
    """Both sides of f_n^t(a) = u_n * (K-side) mod p for every n and t <= c_n."""
    if math.gcd(p, d) != 1:
        raise DomainError("p must be coprime to d")
    if p < large_prime_bound(d):
        raise PreconditionError(f"need p >= (d^2+1)(d-1) = {large_prime_bound(d)}")
    r = p % d
    a = [int(x) % p for x in a]
    if len(a) != d - 1:
        raise DomainError(f"expected {d - 1} coefficients")
    rows = []
    for n in range(1, d):
        un = u_n(d, p, n)
        assert un % p != 0, "u_n is not a unit"
        c_n = strata(d, r, n).c_n
        for t in range(c_n + 1):
            lhs = reduce_mod_p(f_n_t(d, r, n, t).evaluate(a), p)
            kside = _stratum_sum(d, r, n, t, lambda s, i, j: k_poly(d, r, p, n, i, j, s))
            kval = kside.evaluate(a) if kside is not None else 0
            rows.append({"n": n, "t": t, "lhs": lhs, "rhs": un * kval % p, "u_n": un})
    return rows


def hk_congruence_check(d: int, p: int, a: Sequence[int]) -> bool:
    return all(row["lhs"] == row["rhs"] for row in hk_congruence_table(d, p, a))
