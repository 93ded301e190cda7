import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cliffck.algebra import CliffordElement
from cliffck.ck import (
    c_const,
    ck_coefficients,
    gck_extend,
    hgck_extend,
    hgck_gck_split,
    pochhammer,
    recover_initial,
    series_coefficients,
)
from cliffck.exceptions import PreconditionError
from cliffck.parser import parse_polynomial
from cliffck.polynomial import CliffordPolynomial, Op, apply_operator, laplacian
from cliffck.univariate import UnivariatePoly, x0_power

ZERO = lambda m: UnivariatePoly.zero(m)


def P(text, m=3):
    return parse_polynomial(text, m)


def test_hgck_examples():
    assert hgck_extend(x0_power(3, 2), ZERO(3), 3) == P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2")
    for m in (2, 4, 7):
        assert hgck_extend(x0_power(m, 0), ZERO(m), m) == CliffordPolynomial.constant(m, 1)
    assert hgck_extend(ZERO(3), x0_power(3, 0), 3) == P("x1 e1 + x2 e2 + x3 e3")


def test_gck_examples():
    assert gck_extend(x0_power(3, 1), 3) == P("x0 + 1/3 x1 e1 + 1/3 x2 e2 + 1/3 x3 e3")
    assert gck_extend(x0_power(5, 0), 5) == CliffordPolynomial.constant(5, 1)
    expected = P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2 + 2/3 x0 x1 e1 + 2/3 x0 x2 e2 + 2/3 x0 x3 e3")
    assert gck_extend(x0_power(3, 2), 3) == expected


def test_recover_examples():
    assert recover_initial(P("x1 e1 + x2 e2 + x3 e3"), 3) == (ZERO(3), x0_power(3, 0))
    assert recover_initial(P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2"), 3) == (x0_power(3, 2), ZERO(3))
    assert recover_initial(CliffordPolynomial.constant(3, 1), 3) == (x0_power(3, 0), ZERO(3))
    with pytest.raises(PreconditionError):
        recover_initial(P("x1^2"), 3)


def test_split_examples():
    assert hgck_gck_split(x0_power(3, 2), ZERO(3), 3) == P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2")
    assert hgck_gck_split(ZERO(3), x0_power(3, 0), 3) == P("x1 e1 + x2 e2 + x3 e3")
    assert hgck_gck_split(ZERO(3), x0_power(3, 1), 3) == P("x0 x1 e1 + x0 x2 e2 + x0 x3 e3")


def test_constants():
    assert pochhammer(mpq(1, 2), 3) == mpq(15, 8)
    assert c_const(3, 3) == -10
    assert c_const(3, 2) == -6
    co = ck_coefficients(3, 3)
    assert co.even[1] == mpq(1, 6) and co.odd[1] == mpq(1, 10)


def test_m_must_be_at_least_two():
    with pytest.raises(PreconditionError):
        hgck_extend(x0_power(1, 1), ZERO(1), 1)
    with pytest.raises(PreconditionError):
        gck_extend(x0_power(1, 1), 1)


sweep = [(m, k) for m in range(2, 8) for k in range(11)]


@pytest.mark.parametrize("m,k", sweep)
def test_harmonic_monogenic_round_trip(m, k):
    xk = x0_power(m, k)
    h0 = hgck_extend(xk, ZERO(m), m)
    h1 = hgck_extend(ZERO(m), xk, m)
    assert laplacian(h0).is_zero() and laplacian(h1).is_zero()
    assert apply_operator(Op.CR, gck_extend(xk, m)).is_zero()
    assert recover_initial(h0, m) == (xk, ZERO(m))
    assert recover_initial(h1, m) == (ZERO(m), xk)
    assert apply_operator(Op.CR, apply_operator(Op.CRBAR, h0 + h1)).is_zero()


coeff_lists = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=1, max_size=7)


def _uni(m, coeffs):
    return UnivariatePoly(m, {i: mpq(c.numerator, c.denominator) for i, c in enumerate(coeffs)})


@given(st.integers(2, 6), coeff_lists, coeff_lists)
def test_recursion_and_splits(m, a, b):
    A0, A1 = _uni(m, a), _uni(m, b)
    f = hgck_extend(A0, A1, m)
    series = series_coefficients(f)
    # series coefficients obey A_(j+2) = -A_j'' / c(m, j+2) and start from (A0, A1)
    assert series.get(0, ZERO(m)) == A0
    assert series.get(1, ZERO(m)) == A1
    top = max(series, default=0)
    for j in range(top + 1):
        assert series.get(j + 2, ZERO(m)) == series.get(j, ZERO(m)).derivative(2).scale(-1 / c_const(m, j + 2))
    assert hgck_gck_split(A0, A1, m) == f
    assert gck_extend(A0, m) == hgck_extend(A0, ZERO(m), m) + hgck_extend(ZERO(m), A0.derivative(), m).scale(mpq(1, m))
    assert recover_initial(f, m) == (A0, A1)


@given(st.integers(2, 6), st.fractions(min_value=-9, max_value=9, max_denominator=9))
def test_antiderivative_constant_is_immaterial(m, c):
    const = UnivariatePoly(m, {0: mpq(c.numerator, c.denominator)})
    assert gck_extend(const, m).grade_project(1).is_zero()


def test_clifford_valued_initial_data():
    m = 3
    e12 = CliffordElement.basis(m, 1, 2)
    A0 = UnivariatePoly(m, {2: e12})
    f = hgck_extend(A0, ZERO(m), m)
    assert laplacian(f).is_zero()
    assert f == P("x0^2 e12 - 1/3 x1^2 e12 - 1/3 x2^2 e12 - 1/3 x3^2 e12")
    assert recover_initial(f, m) == (A0, ZERO(m))
    with pytest.raises(PreconditionError):
        hgck_gck_split(A0, ZERO(m), m)
