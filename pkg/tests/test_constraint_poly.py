import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from juddian.constraint_poly import (
    BivariatePoly,
    ExactCapExceeded,
    UnivariatePoly,
    eval_exact,
    eval_float,
    kus_polynomial,
    laguerre_coefficients,
    restrict_to_line,
    restrict_to_x_axis,
    restrict_to_y_axis,
    y_axis_product,
)
from juddian.tridiag import charpoly_eval, rational_A

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def test_p1():
    assert kus_polynomial(1).coeffs == {(1, 0): 1, (0, 1): 1, (0, 0): -1}


def test_p2():
    p = kus_polynomial(2)
    assert p.coeffs == {(2, 0): 2, (1, 1): 3, (0, 2): 1, (1, 0): -8, (0, 1): -5, (0, 0): 4}


def test_p4_selected_coefficients():
    p = kus_polynomial(4)
    assert p.coeff(0, 0) == 576
    assert p.coeff(4, 0) == 24
    assert p.coeff(0, 4) == 1


@pytest.mark.parametrize("n", range(1, 26))
def test_degree_and_leading_terms(n):
    p = kus_polynomial(n)
    assert p.total_degree == n
    assert p.coeff(n, 0) == math.factorial(n)
    assert p.coeff(0, n) == 1
    assert all(c != 0 for c in p.coeffs.values())
    assert p.total_degree == max(i + j for i, j in p.coeffs)


def test_bivariate_drops_zero_coefficients():
    p = BivariatePoly({(0, 0): 0, (1, 0): 3})
    assert p.coeffs == {(1, 0): 3}
    assert p.total_degree == 1
    assert BivariatePoly({}).total_degree == -1


def test_rejects_bad_n_and_cap():
    with pytest.raises(ValueError):
        kus_polynomial(0)
    with pytest.raises(ExactCapExceeded):
        kus_polynomial(10, cap=9)


def test_eval_examples():
    assert eval_exact(kus_polynomial(1), Fraction(1, 2), Fraction(1, 2)) == 0
    assert eval_exact(kus_polynomial(2), 0, 0) == 4
    for n in range(1, 7):
        assert eval_exact(kus_polynomial(n), 0, 0) == (-1) ** n * math.factorial(n) ** 2


def test_eval_float_matches_exact_for_small_n():
    p = kus_polynomial(5)
    assert eval_float(p, 0.3, 1.7) == pytest.approx(float(eval_exact(p, Fraction(0.3), Fraction(1.7))), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 8), x=rationals, y=rationals)
def test_eval_matches_charpoly(n, x, y):
    lhs = eval_exact(kus_polynomial(n), x, y)
    assert lhs == math.factorial(n) * charpoly_eval(rational_A(n, y), x)


def test_restrictions_examples():
    assert restrict_to_y_axis(1) == UnivariatePoly([-1, 1])
    assert restrict_to_y_axis(3) == UnivariatePoly([-36, 49, -14, 1])
    assert restrict_to_x_axis(1) == UnivariatePoly([-1, 1])
    assert restrict_to_x_axis(2) == UnivariatePoly([4, -8, 2])
    assert restrict_to_x_axis(3) == UnivariatePoly([-36, 108, -54, 6])
    p5 = restrict_to_y_axis(5)
    assert [m * m for m in range(1, 6) if p5(m * m) == 0] == [1, 4, 9, 16, 25]


@pytest.mark.parametrize("n", [1, 2, 7, 15])
def test_restrictions_match_closed_forms(n):
    assert restrict_to_y_axis(n) == y_axis_product(n)
    assert restrict_to_x_axis(n) == laguerre_coefficients(n).scale((-1) ** n * math.factorial(n) ** 2)


def test_laguerre_coefficients():
    assert laguerre_coefficients(2) == UnivariatePoly([1, -2, Fraction(1, 2)])


def test_univariate_trim_and_degree():
    assert UnivariatePoly([1, 2, 0, 0]).degree == 1
    assert UnivariatePoly([0, 0]).degree == -1


def test_restrict_to_line():
    # P_1(x, 1 - x) vanishes identically
    assert restrict_to_line(kus_polynomial(1), 0, 1, 1, -1).degree == -1
    # P_2(t, 0) is the x restriction
    assert restrict_to_line(kus_polynomial(2), 0, 1, 0, 0) == restrict_to_x_axis(2)


@pytest.mark.parametrize("n", [1, 4, 12])
def test_json_round_trip(n):
    p = kus_polynomial(n)
    n2, q = BivariatePoly.from_json(p.to_json(n))
    assert n2 == n and q == p


def test_partials():
    p = kus_polynomial(2)
    assert p.partial_x().coeffs == {(1, 0): 4, (0, 1): 3, (0, 0): -8}
    assert p.partial_y().coeffs == {(1, 0): 3, (0, 1): 2, (0, 0): -5}
