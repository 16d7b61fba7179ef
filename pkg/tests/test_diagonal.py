from fractions import Fraction

import pytest

from expsum_newton._util import DomainError
from expsum_newton.diagonal import cycle_data, diagonal_polygon, nonconvergence_witness
from expsum_newton.expsums import PolyInput, l_polynomial, newton_polygon
from expsum_newton.polygon import hodge_polygon, lies_on_or_above
from expsum_newton.predictor import coprime_residues

F = Fraction


def test_d3_classes():
    assert diagonal_polygon(3, 1) == hodge_polygon(3)
    assert diagonal_polygon(3, 2).vertices == ((0, 0), (2, 1))
    assert nonconvergence_witness(3) == (1, 2)
    assert nonconvergence_witness(4) == (1, 3)


def test_cycle_data_json():
    obj = cycle_data(5, 2).to_json()
    assert obj["cycles"] == [{"members": [1, 2, 4, 3], "length": 4, "slope": "1/2"}]
    assert obj["np_vertices"] == [["0", "0"], ["4", "2"]]


@pytest.mark.parametrize("d", range(3, 12))
def test_class_one_is_hodge_and_every_class_ends_on_hodge(d):
    assert diagonal_polygon(d, 1) == hodge_polygon(d)
    for r in coprime_residues(d):
        P = diagonal_polygon(d, r)
        assert P.endpoint == (d - 1, F(d - 1, 2))
        assert lies_on_or_above(P, hodge_polygon(d))
        cycles = cycle_data(d, r).cycles
        assert sorted(m for c in cycles for m in c.members) == list(range(1, d))


@pytest.mark.parametrize("d,p", [(3, 5), (3, 7), (3, 11), (4, 7), (4, 11), (5, 7), (5, 11), (5, 13), (6, 5), (7, 3)])
def test_brute_force_agreement(d, p):
    L = l_polynomial(PolyInput.monomial(d), p)
    assert newton_polygon(L) == diagonal_polygon(d, p % d)


def test_domain_errors():
    with pytest.raises(DomainError):
        diagonal_polygon(4, 2)
    with pytest.raises(DomainError):
        nonconvergence_witness(2)
