from fractions import Fraction
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cliffck.ck import hgck_extend
from cliffck.exceptions import IdentityViolation, PreconditionError
from cliffck.families import (
    coeff,
    family_poly,
    gamma_m,
    gegenbauer_paravector,
    h1_cross_check,
    perturbed_coefficient,
    riesz_partial_sum,
    riesz_partial_sum_symbolic,
)
from cliffck.parser import parse_polynomial
from cliffck.polynomial import (
    CliffordPolynomial,
    Op,
    apply_operator,
    dirac,
    evaluate,
    laplacian,
    variable_power,
    vector_op_product,
)
from cliffck.univariate import UnivariatePoly, x0_power


def rising(a, n):
    out = Fraction(1)
    for t in range(n):
        out *= a + t
    return out


def harmonic_oracle(k, s, m):
    # ratio of Gamma values written as rising factorials of (m-1)/2
    a = Fraction(m - 1, 2)
    return comb(k, s) * rising(a, k - s) * rising(a, s) / rising(Fraction(m - 1), k)


def test_coefficient_examples():
    for k in range(7):
        for s in range(k + 1):
            assert coeff("harmonic", k, s, 3) == mpq(1, k + 1)
    assert coeff("harmonic", 4, 1, 5) == mpq(8, 35) == coeff("harmonic", 4, 3, 5)
    assert coeff("appell", 1, 0, 3) == mpq(2, 3)
    assert coeff("appell", 1, 1, 3) == mpq(1, 3)


@pytest.mark.parametrize("m", [3, 4, 5, 7, 9])
def test_harmonic_coefficients_against_oracle(m):
    for k in range(9):
        for s in range(k + 1):
            f = harmonic_oracle(k, s, m)
            assert coeff("harmonic", k, s, m) == mpq(f.numerator, f.denominator)


def P(text, m=3):
    return parse_polynomial(text, m)


def test_family_examples():
    assert family_poly("P", 1, 3) == P("x0")
    assert family_poly("Q", 2, 3) == P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2 + 2/3 x0 x1 e1 + 2/3 x0 x2 e2 + 2/3 x0 x3 e3")
    assert family_poly("H1", 2, 3) == P(
        "x0^2 x1 e1 + x0^2 x2 e2 + x0^2 x3 e3 - 1/5 x1^3 e1 - 1/5 x1^2 x2 e2 - 1/5 x1^2 x3 e3"
        " - 1/5 x1 x2^2 e1 - 1/5 x1 x3^2 e1 - 1/5 x2^3 e2 - 1/5 x2^2 x3 e3 - 1/5 x2 x3^2 e2 - 1/5 x3^3 e3"
    )
    assert family_poly("Q", 1, 3) == P("x0 + 1/3 x1 e1 + 1/3 x2 e2 + 1/3 x3 e3")


def test_gamma_examples():
    assert gamma_m(3) == -2
    assert gamma_m(5) == mpq(8, 3)
    assert gamma_m(7) == mpq(-16, 5)
    with pytest.raises(PreconditionError):
        gamma_m(4)


SWEEP = [(m, k) for m in (3, 5, 7, 9) for k in range(9)]


@pytest.mark.parametrize("m,k", SWEEP)
def test_family_identities(m, k):
    Pk, Qk = family_poly("P", k, m), family_poly("Q", k, m)
    assert laplacian(Pk).is_zero()
    assert apply_operator(Op.CR, Qk).is_zero()
    T = [coeff("harmonic", k, s, m) for s in range(k + 1)]
    A = [coeff("appell", k, s, m) for s in range(k + 1)]
    assert sum(T) == 1
    assert T == T[::-1]
    assert (m - 1) * T[k] == (k + m - 1) * A[k]
    for s in range(k):
        assert (m - 1) * T[s] == (k + m - 1) * A[s] - k * coeff("appell", k - 1, s, m)
    if k:
        x = variable_power("x", 1, m)
        assert Pk.scale(m - 1) == Qk.scale(k + m - 1) - (x * family_poly("Q", k - 1, m)).scale(k)
        assert apply_operator(Op.CRBAR, Qk).scale(mpq(1, 2)) == family_poly("Q", k - 1, m).scale(k)
    assert Pk.grades() <= {0}
    assert Pk == hgck_extend(x0_power(m, k), 0, m)
    assert h1_cross_check(k, m) == hgck_extend(0, x0_power(m, k), m)
    assert family_poly("H0", k, m) == Pk


@pytest.mark.parametrize("m", [3, 5, 7])
@pytest.mark.parametrize("k", range(1, 9))
def test_pinned_derivative_system(m, k):
    H0 = lambda j: family_poly("H0", j, m) if j >= 0 else CliffordPolynomial.zero(m)
    H1 = lambda j: family_poly("H1", j, m) if j >= 0 else CliffordPolynomial.zero(m)
    assert H0(k).derivative(0) == H0(k - 1).scale(k)
    assert H1(k - 1).derivative(0) == H1(k - 2).scale(k - 1)
    assert vector_op_product("inner", H1(k - 1)) == H0(k - 1).scale(m)
    assert vector_op_product("wedge", H1(k - 1)).is_zero()
    assert dirac(H0(k)) == H1(k - 2).scale(mpq(-k * (k - 1), m))


def test_printed_signs_disagree_with_computation():
    m, k = 3, 2
    H0, H1 = (lambda j: family_poly("H0", j, m)), (lambda j: family_poly("H1", j, m))
    assert H0(k).derivative(0) != H0(k - 1).scale(-k)
    assert vector_op_product("inner", H1(k - 1)) != H0(k - 1).scale(k)


@given(st.integers(1, 4).map(lambda t: 2 * t + 1), st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_basis_reconstruction(m, a, b):
    lhs = hgck_extend(UnivariatePoly(m, dict(enumerate(a))), UnivariatePoly(m, dict(enumerate(b))), m)
    rhs = CliffordPolynomial.zero(m)
    for j, c in enumerate(a):
        rhs = rhs + family_poly("H0", j, m).scale(c)
    for j, c in enumerate(b):
        rhs = rhs + family_poly("H1", j, m).scale(c)
    assert lhs == rhs


@pytest.mark.parametrize("m", [3, 5, 7])
@pytest.mark.parametrize("k", range(9))
def test_gegenbauer_scalar_reading(m, k):
    assert gegenbauer_paravector(k, m, "scalar", check=True) == family_poly("P", k, m)


def test_gegenbauer_examples_and_paravector_reading():
    assert gegenbauer_paravector(0, 3) == CliffordPolynomial.constant(3, 1)
    assert gegenbauer_paravector(1, 3) == P("x0")
    assert gegenbauer_paravector(2, 3) == P("x0^2 - 1/3 x1^2 - 1/3 x2^2 - 1/3 x3^2")
    assert gegenbauer_paravector(0, 3, "paravector") == CliffordPolynomial.constant(3, 1)
    with pytest.raises(IdentityViolation):
        gegenbauer_paravector(1, 3, "paravector", check=True)


def test_riesz_examples():
    pt = (mpq(1, 5), mpq(1, 10), mpq(-1, 5), 0)
    assert riesz_partial_sum(0, 3, pt) == 1
    assert riesz_partial_sum(6, 3, pt) == riesz_partial_sum_symbolic(6, 3, pt)
    t = mpq(2, 5)
    assert riesz_partial_sum(10, 3, (t, 0, 0, 0)) == sum((k + 1) * t ** k for k in range(11))
    s = float(riesz_partial_sum(25, 3, (0, mpq(3, 10), 0, 0)).scalar_part())
    assert abs(s - 1 / 1.09) <= 1e-8
    with pytest.raises(PreconditionError):
        riesz_partial_sum(3, 3, (1, 0, 0, 0))


def test_perturbation_hook_restores_state():
    before = family_poly("P", 4, 5)
    with perturbed_coefficient("harmonic", 4, 1, 5, mpq(9, 35)):
        assert coeff("harmonic", 4, 1, 5) == mpq(9, 35)
        assert not laplacian(family_poly("P", 4, 5)).is_zero()
    assert coeff("harmonic", 4, 1, 5) == mpq(8, 35)
    assert family_poly("P", 4, 5) == before
    assert evaluate(before, (1, 0, 0, 0, 0, 0)) == 1
