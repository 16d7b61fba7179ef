import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from expsum_newton._util import BudgetError, DomainError
from expsum_newton.finitefield import (
    ExtFieldSpec,
    block_mul,
    check_budget,
    chunk_ranges,
    element_block,
    enumerate_field,
    eval_poly,
    find_irreducible,
    irreducibles,
    is_irreducible,
    trace,
    trace_value_counts,
)

SMALL = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 2), (11, 2)]


def sympy_irreducible(coeffs, p):
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible


def necklace_count(p, ell):
    return sum(sympy.mobius(k) * p ** (ell // k) for k in sympy.divisors(ell)) // ell


def test_frozen_irreducibles():
    assert find_irreducible(5, 2) == (2, 0, 1)  # x^2 + 2
    assert find_irreducible(7, 2) == (1, 0, 1)  # x^2 + 1
    assert find_irreducible(5, 1) == (0, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("p,ell", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2), (13, 4)])
def test_first_irreducible_matches_sympy_scan(p, ell):
    for idx in range(p**ell):
        low = [(idx // p**i) % p for i in range(ell)]
        if sympy_irreducible(low + [1], p):
            break
    assert find_irreducible(p, ell) == tuple(low) + (1,)


@pytest.mark.parametrize("p,ell", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_irreducible_count_matches_necklace_formula(p, ell):
    found = list(irreducibles(p, ell))
    assert len(found) == necklace_count(p, ell)
    assert all(sympy_irreducible(m, p) for m in found[:10])


def test_reducible_modulus_rejected():
    assert not is_irreducible((1, 0, 1), 5)  # x^2 + 1 = (x-2)(x+2) mod 5
    with pytest.raises(DomainError):
        ExtFieldSpec(5, 2, (1, 0, 1))
    with pytest.raises(DomainError):
        ExtFieldSpec(2, 1)
    with pytest.raises(DomainError):
        ExtFieldSpec(9, 1)


def test_modulus_string():
    assert ExtFieldSpec(5, 2).modulus_str() == "x^2 + 2"


@pytest.mark.parametrize("p,ell", SMALL)
def test_frobenius_fixes_every_element(p, ell):
    spec = ExtFieldSpec(p, ell)
    q = spec.order
    for x in enumerate_field(spec):
        assert x**q == x
        if x.index():
            assert x ** (q - 1) == spec.one()


@pytest.mark.parametrize("p,ell", SMALL)
def test_trace_is_sum_of_conjugates_and_additive(p, ell):
    spec = ExtFieldSpec(p, ell)
    elems = list(enumerate_field(spec))
    for x in elems[:: max(1, len(elems) // 40)]:
        conj_sum = spec.element([0])
        for k in range(ell):
            conj_sum = conj_sum + x ** (p**k)
        assert conj_sum.is_prime_field()
        assert conj_sum.coeffs[0] == trace(x)
        y = elems[(x.index() * 7 + 3) % len(elems)]
        assert trace(x + y) == (trace(x) + trace(y)) % p
    # a surjective F_p-linear map: each value hit p^(ell-1) times
    values = np.bincount([trace(x) for x in elems], minlength=p)
    assert (values == p ** (ell - 1)).all()


@pytest.mark.parametrize("p,ell", SMALL)
def test_index_order_round_trip(p, ell):
    spec = ExtFieldSpec(p, ell)
    assert [x.index() for x in enumerate_field(spec)] == list(range(spec.order))
    assert [x.index() for x in enumerate_field(spec, start=3, stop=9)] == list(range(3, min(9, spec.order)))


@given(st.sampled_from([(5, 2), (7, 3), (13, 2), (3, 5)]), st.data())
def test_block_mul_matches_scalar_mul(pl, data):
    p, ell = pl
    spec = ExtFieldSpec(p, ell)
    idx_a = data.draw(st.lists(st.integers(0, spec.order - 1), min_size=1, max_size=20))
    idx_b = data.draw(st.lists(st.integers(0, spec.order - 1), min_size=len(idx_a), max_size=len(idx_a)))
    A = np.stack([element_block(spec, i, i + 1)[:, 0] for i in idx_a], axis=1)
    B = np.stack([element_block(spec, i, i + 1)[:, 0] for i in idx_b], axis=1)
    C = block_mul(A, B, spec)
    for k, (i, j) in enumerate(zip(idx_a, idx_b)):
        assert list(C[:, k]) == list((spec.from_index(i) * spec.from_index(j)).coeffs)


def naive_counts(f, spec):
    counts = [0] * spec.p
    for x in enumerate_field(spec):
        counts[trace(eval_poly(f, x))] += 1
    return counts


@given(
    st.sampled_from(SMALL),
    st.lists(st.integers(0, 50), min_size=3, max_size=5),
)
def test_trace_histogram_matches_naive_enumeration(pl, low):
    p, ell = pl
    spec = ExtFieldSpec(p, ell)
    f = [c % p for c in low] + [1]
    assert list(trace_value_counts(f, spec)) == naive_counts(f, spec)


def test_trace_histogram_is_additive_over_chunks():
    spec = ExtFieldSpec(7, 3)
    f = [3, 1, 0, 2, 1]
    full = trace_value_counts(f, spec)
    parts = sum(trace_value_counts(f, spec, lo, hi) for lo, hi in chunk_ranges(spec.order, nchunks=5))
    assert (parts == full).all()
    assert full.sum() == spec.order


def test_chunk_ranges_cover_exactly():
    for total, n in [(10, 3), (1, 4), (343, 7)]:
        ranges = chunk_ranges(total, nchunks=n)
        assert ranges[0][0] == 0 and ranges[-1][1] == total
        assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))


def test_budget_refusal_reports_sizes():
    with pytest.raises(BudgetError) as exc:
        check_budget(101, 100)
    assert exc.value.required == 101 and exc.value.budget == 100
    with pytest.raises(BudgetError):
        next(enumerate_field(ExtFieldSpec(7, 3), budget=300))
