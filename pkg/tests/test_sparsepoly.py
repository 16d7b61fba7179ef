from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from expsum_newton._util import DomainError
from expsum_newton.sparsepoly import SparsePoly, grlex_key

F = Fraction

terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=6,
)
points = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@given(terms, terms, points)
def test_arithmetic_commutes_with_evaluation(t1, t2, pt):
    a, b = SparsePoly(2, t1), SparsePoly(2, t2)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


@given(terms)
def test_no_zero_coefficients_stored(t):
    a = SparsePoly(2, t)
    assert all(c != 0 for c in a.terms.values())
    assert (a - a).is_zero()
    assert a * 0 == SparsePoly(2)


@given(terms, st.sampled_from([5, 7, 101]), st.tuples(st.integers(0, 100), st.integers(0, 100)))
def test_reduction_commutes_with_evaluation(t, p, pt):
    t = {m: c for m, c in t.items() if c.denominator % p}
    a = SparsePoly(2, t)
    val = a.evaluate(pt)
    assert a.reduce(p).evaluate(pt) == val.numerator * pow(val.denominator, -1, p) % p


def test_grlex_order_and_printing():
    A1, A2 = SparsePoly.variable(2, 1), SparsePoly.variable(2, 2)
    f = A1.scale(F(4, 9)) - (A2 * A2).scale(F(4, 27)) + SparsePoly.constant(2, 1)
    assert f.monomials() == [(0, 0), (1, 0), (0, 2)]
    assert str(f) == "-4/27*A2^2 + 4/9*A1 + 1"
    assert f.to_json() == [[[0, 0], "1"], [[1, 0], "4/9"], [[0, 2], "-4/27"]]
    assert sorted([(0, 2), (1, 1), (2, 0), (0, 1)], key=grlex_key) == [(0, 1), (0, 2), (1, 1), (2, 0)]


def test_incompatible_rings_rejected():
    with pytest.raises(DomainError):
        SparsePoly.constant(2, 1) + SparsePoly.constant(3, 1)
    with pytest.raises(DomainError):
        SparsePoly.constant(2, 1) + SparsePoly.constant(2, 1, modulus=5)
    with pytest.raises(DomainError):
        SparsePoly(2, {(1,): 1})


def test_equal_polynomials_hash_equal():
    a = SparsePoly(2, {(1, 0): 1, (0, 1): 2})
    b = SparsePoly(2, [((0, 1), 2), ((1, 0), 1)])
    assert a == b and hash(a) == hash(b)
