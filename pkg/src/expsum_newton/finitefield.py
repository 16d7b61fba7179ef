"""Prime fields and their extensions F_{p^ell} = F_p[x]/(m(x)).

Two layers live here.  ``ExtFieldElement`` is a small exact element type used
for reference computations and tests.  The bulk routines (``element_block``,
``trace_value_counts``) work on numpy arrays of coefficient rows and are what
the exponential-sum enumeration actually runs on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from ._util import BudgetError, DomainError, is_prime, reduce_mod_p

DEFAULT_BUDGET = 20_000_000
DEFAULT_CHUNK = 1 << 15


# -- dense polynomials over F_p, low degree first ---------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim([c % p for c in m])
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - c * mk) % p
        _trim(a)
    return a


def _polymulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, m, p)


def _polygcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _frobenius_power(m: Sequence[int], p: int, k: int) -> list[int]:
    """x^(p^k) mod m."""
    result = [0, 1]
    for _ in range(k):
        base, acc, e = result, [1], p
        while e:
            if e & 1:
                acc = _polymulmod(acc, base, m, p)
            base = _polymulmod(base, base, m, p)
            e >>= 1
        result = acc
    return result


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial by gcd with x^(p^k) - x, k <= deg/2."""
    ell = len(m) - 1
    if ell <= 0:
        return False
    if ell == 1:
        return True
    for k in range(1, ell // 2 + 1):
        h = _frobenius_power(m, p, k)
        h = h + [0] * max(0, 2 - len(h))
        h[1] -= 1
        g = _polygcd(m, h, p)
        if len(g) > 1:
            return False
    return True


def irreducibles(p: int, ell: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducibles of degree ell in increasing order of sum c_i p^i.

    Yields full coefficient tuples ``(c_0, ..., c_{ell-1}, 1)``.
    """
    if ell == 1:
        yield (0, 1)
        return
    for idx in range(p**ell):
        low = [(idx // p**i) % p for i in range(ell)]
        cand = tuple(low) + (1,)
        if low[0] != 0 and is_irreducible(cand, p):
            yield cand


@lru_cache(maxsize=None)
def find_irreducible(p: int, ell: int) -> tuple[int, ...]:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if ell < 1:
        raise DomainError("extension degree must be positive")
    return next(irreducibles(p, ell))


# -- field spec and elements --------------------------------------------------


@dataclass(frozen=True)
class ExtFieldSpec:
    p: int
    ell: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise DomainError(f"p must be an odd prime, got {self.p}")
        if self.ell < 1:
            raise DomainError("extension degree must be positive")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_irreducible(self.p, self.ell))
        m = tuple(int(c) for c in self.modulus)
        if len(m) != self.ell + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise DomainError(f"modulus {m} is not monic of degree {self.ell} over F_{self.p}")
        if not is_irreducible(m, self.p):
            raise DomainError(f"modulus {m} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", m)

    @property
    def order(self) -> int:
        return self.p**self.ell

    def element(self, coeffs: Sequence[int]) -> "ExtFieldElement":
        return ExtFieldElement(self, coeffs)

    def from_index(self, idx: int) -> "ExtFieldElement":
        p = self.p
        return ExtFieldElement(self, [(idx // p**i) % p for i in range(self.ell)])

    def one(self) -> "ExtFieldElement":
        return ExtFieldElement(self, [1])

    def generator(self) -> "ExtFieldElement":
        """Residue class of x (for ell = 1 this is 0)."""
        return ExtFieldElement(self, [0, 1])

    def modulus_str(self) -> str:
        terms = []
        for k in range(self.ell, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms) or "0"


class ExtFieldElement:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: ExtFieldSpec, coeffs: Sequence[int]):
        red = _polymod(list(coeffs), spec.modulus, spec.p) if len(coeffs) > spec.ell else [
            c % spec.p for c in coeffs
        ]
        red = list(red) + [0] * (spec.ell - len(red))
        self.spec = spec
        self.coeffs = tuple(red)

    def _other(self, other) -> "ExtFieldElement":
        if isinstance(other, ExtFieldElement):
            if other.spec != self.spec:
                raise DomainError("elements of different fields")
            return other
        return ExtFieldElement(self.spec, [int(other)])

    def __add__(self, other):
        other = self._other(other)
        return ExtFieldElement(self.spec, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return ExtFieldElement(self.spec, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        other = self._other(other)
        s = self.spec
        return ExtFieldElement(s, _polymulmod(self.coeffs, other.coeffs, s.modulus, s.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.spec.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExtFieldElement):
            return self.spec == other.spec and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == ExtFieldElement(self.spec, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.modulus, self.coeffs))

    def __repr__(self):
        return f"ExtFieldElement({list(self.coeffs)} mod {self.spec.modulus_str()}, p={self.spec.p})"

    def is_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def index(self) -> int:
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))


def trace(x: ExtFieldElement) -> int:
    """Absolute trace x + x^p + ... + x^(p^(ell-1)), returned as a residue."""
    p = x.spec.p
    acc = x
    y = x
    for _ in range(x.spec.ell - 1):
        y = y**p
        acc = acc + y
    # the sum is Frobenius-fixed, hence lies in F_p
    assert acc.is_prime_field(), "trace left the prime field"
    return acc.coeffs[0]


def eval_poly(f: Sequence, x: ExtFieldElement) -> ExtFieldElement:
    """Horner evaluation of ``f`` (coefficients low degree first, p-integral)."""
    p = x.spec.p
    acc = ExtFieldElement(x.spec, [0])
    for c in reversed(f):
        acc = acc * x + reduce_mod_p(c, p)
    return acc


def check_budget(count: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetError(count, budget)


def chunk_ranges(total: int, nchunks: int | None = None, chunk: int | None = None):
    """Disjoint contiguous ``(start, stop)`` index ranges covering ``range(total)``."""
    if nchunks is not None:
        step = -(-total // max(1, nchunks))
    else:
        step = chunk or DEFAULT_CHUNK
    step = max(step, 1)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def enumerate_field(
    spec: ExtFieldSpec,
    budget: int | None = None,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[ExtFieldElement]:
    """All elements in index order, where element index is ``sum c_i p^i``.

    ``start``/``stop`` restrict to one contiguous chunk (see ``chunk_ranges``).
    """
    check_budget(spec.order, budget)
    stop = spec.order if stop is None else min(stop, spec.order)
    p, ell = spec.p, spec.ell
    if start == 0 and stop == spec.order:
        for digits in itertools.product(range(p), repeat=ell):
            yield ExtFieldElement(spec, digits[::-1])
        return
    for idx in range(start, stop):
        yield spec.from_index(idx)


# -- vectorized bulk layer ----------------------------------------------------


def element_block(spec: ExtFieldSpec, start: int, stop: int) -> np.ndarray:
    """Coefficients of elements ``start..stop-1`` as an (ell, N) int64 array.

    Row i holds the coefficient of x^i; column-major-by-coefficient keeps every
    arithmetic step on contiguous vectors.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((spec.ell, stop - start), dtype=np.int64)
    for i in range(spec.ell):
        np.remainder(idx, spec.p, out=out[i])
        idx //= spec.p
    return out


def block_mul(a: np.ndarray, b: np.ndarray, spec: ExtFieldSpec) -> np.ndarray:
    """Elementwise product of two (ell, N) blocks, reduced into [0, p)."""
    p, ell, m = spec.p, spec.ell, spec.modulus
    if ell == 1:
        return (a * b) % p
    prod = np.zeros((2 * ell - 1, a.shape[1]), dtype=np.int64)
    for i in range(ell):
        for j in range(ell):
            prod[i + j] += a[i] * b[j]
    # entries stay far below 2^63 for p < 2^10, ell <= 8, so reduce once at the end
    for k in range(2 * ell - 2, ell - 1, -1):
        top = prod[k] % p
        for i in range(ell):
            if m[i]:
                prod[k - ell + i] -= top * (m[i] if m[i] <= p // 2 else m[i] - p)
    return prod[:ell] % p


@lru_cache(maxsize=None)
def _trace_vector(spec: ExtFieldSpec) -> tuple[int, ...]:
    g = spec.generator()
    return tuple(trace(g**i) for i in range(spec.ell))


def trace_vector(spec: ExtFieldSpec) -> np.ndarray:
    """``Tr(x^i)`` for the basis powers i = 0..ell-1."""
    return np.array(_trace_vector(spec), dtype=np.int64)


def _trace_of_block(block: np.ndarray, tv: Sequence[int]) -> np.ndarray:
    acc = np.zeros(block.shape[1], dtype=np.int64)
    for i, t in enumerate(tv):
        if t:
            acc += t * block[i]
    return acc


def trace_power_block(spec: ExtFieldSpec, block: np.ndarray, degree: int) -> np.ndarray:
    """Rows ``Tr(x^k)`` for k = 1..degree, as a (degree, N) array (not reduced mod p)."""
    tv = _trace_vector(spec)
    out = np.empty((degree, block.shape[1]), dtype=np.int64)
    power = block
    for k in range(1, degree + 1):
        if k > 1:
            power = block_mul(power, block, spec)
        out[k - 1] = _trace_of_block(power, tv)
    return out


def trace_value_counts(
    coeffs_mod_p: Sequence[int],
    spec: ExtFieldSpec,
    start: int = 0,
    stop: int | None = None,
) -> np.ndarray:
    """Histogram of ``Tr(f(x))`` over elements ``start..stop-1``.

    ``coeffs_mod_p`` lists f's coefficients (low degree first) already reduced
    mod p.  The returned length-p integer vector is additive over chunks, so a
    chunked sum equals the full enumeration exactly.
    """
    p = spec.p
    stop = spec.order if stop is None else stop
    degree = len(coeffs_mod_p) - 1
    counts = np.zeros(p, dtype=np.int64)
    for lo, hi in chunk_ranges(stop - start):
        block = element_block(spec, start + lo, start + hi)
        traces = trace_power_block(spec, block, degree)
        # Tr(a0) = ell * a0 for the constant term
        total = np.full(hi - lo, coeffs_mod_p[0] * spec.ell % p, dtype=np.int64)
        for k in range(1, degree + 1):
            c = coeffs_mod_p[k]
            if c:
                total += c * traces[k - 1]
        counts += np.bincount(total % p, minlength=p)
    return counts
