import math

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cliffck.algebra import CliffordElement
from cliffck.axial import (
    AxialPair,
    RadialPolynomial,
    axial_decompose,
    intrinsic_components,
    radial_power,
    radial_to_polynomial,
    vekua_residual,
)
from cliffck.ck import gck_extend
from cliffck.exceptions import NotAxial, PreconditionError
from cliffck.families import family_poly
from cliffck.polynomial import CliffordPolynomial, laplacian, norm_sq_power
from cliffck.univariate import UnivariatePoly, x0_power


def even(m, terms):
    return RadialPolynomial(m, "even", terms)


def odd(m, terms):
    return RadialPolynomial(m, "odd", terms)


def test_decompose_examples():
    pair = axial_decompose(family_poly("Q", 1, 3))
    assert pair.A == even(3, {(1, 0): 1})
    assert pair.B == odd(3, {(0, 1): mpq(1, 3)})
    pair = axial_decompose(family_poly("P", 2, 3))
    assert pair.A == even(3, {(2, 0): 1, (0, 2): mpq(-1, 3)})
    assert pair.B.is_zero()
    x1e2 = CliffordPolynomial.variable(3, 1) * CliffordElement.basis(3, 2)
    with pytest.raises(NotAxial):
        axial_decompose(x1e2)
    with pytest.raises(NotAxial):
        axial_decompose(CliffordPolynomial.variable(3, 1))


def test_vekua_examples():
    r1, r2 = vekua_residual(AxialPair(even(3, {(1, 0): 1}), odd(3, {(0, 1): mpq(1, 3)})))
    assert r1.is_zero() and r2.is_zero()
    r1, r2 = vekua_residual(AxialPair(even(3, {(1, 0): 1}), odd(3, {})))
    assert r1 == even(3, {(0, 0): 1}) and r2.is_zero()
    r1, r2 = vekua_residual(axial_decompose(gck_extend(x0_power(5, 2), 5)))
    assert r1.is_zero() and r2.is_zero()


def test_radial_power_examples():
    assert radial_power("raise", 1, odd(3, {(0, 3): 1})) == odd(3, {(0, 1): 2})
    assert radial_power("lower", 2, even(3, {(0, 4): 1})) == even(3, {(0, 0): 8})
    assert radial_power("raise", 1, odd(3, {(0, 1): 1})).is_zero()
    with pytest.raises(PreconditionError):
        radial_power("lower", 1, odd(3, {(0, 1): 1}))


@pytest.mark.parametrize("n", range(21))
def test_radial_power_closed_form(n):
    # (1/r d/dr)^s r^(2i) = 2^s i!/(i-s)! r^(2i-2s); (d/dr 1/r)^s r^(2i+1) = 2^s i!/(i-s)! r^(2i+1-2s)
    i = n // 2
    kind = "lower" if n % 2 == 0 else "raise"
    g = RadialPolynomial(3, "even" if n % 2 == 0 else "odd", {(0, n): 1})
    for s in range(12):
        got = radial_power(kind, s, g)
        if s > i:
            assert got.is_zero()
        else:
            assert got == RadialPolynomial(3, g.parity, {(0, n - 2 * s): 2 ** s * math.factorial(i) // math.factorial(i - s)})


def test_intrinsic_components_examples():
    a, b = intrinsic_components(x0_power(3, 2))
    assert a == even(3, {(2, 0): 1, (0, 2): -1}) and b == odd(3, {(1, 1): 2})
    a, b = intrinsic_components(x0_power(3, 1))
    assert a == even(3, {(1, 0): 1}) and b == odd(3, {(0, 1): 1})
    a, b = intrinsic_components(UnivariatePoly(3, {0: 1}))
    assert a == even(3, {(0, 0): 1}) and b.is_zero()
    with pytest.raises(PreconditionError):
        intrinsic_components(UnivariatePoly(3, {0: CliffordElement.basis(3, 1)}))


@given(st.integers(0, 12))
def test_intrinsic_components_match_complex_power(k):
    # oracle: binomial expansion of (x0 + i r)^k
    a, b = intrinsic_components(x0_power(3, k))
    alpha, beta = {}, {}
    for j in range(k + 1):
        c = math.comb(k, j) * (-1) ** (j // 2)
        (alpha if j % 2 == 0 else beta)[(k - j, j)] = c
    assert a == even(3, alpha) and b == odd(3, beta)


def test_radial_to_polynomial_examples():
    assert radial_to_polynomial(AxialPair(even(3, {(2, 0): 1, (0, 2): mpq(-1, 3)}), odd(3, {}))) == family_poly("P", 2, 3)
    xv = radial_to_polynomial(AxialPair(even(3, {}), odd(3, {(0, 1): 1})))
    assert xv == family_poly("H1", 0, 3)
    q3 = family_poly("Q", 3, 3)
    assert radial_to_polynomial(axial_decompose(q3)) == q3


profiles = st.integers(2, 6).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 3).map(lambda t: 2 * t)), st.integers(-5, 5), max_size=4),
        st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 3).map(lambda t: 2 * t + 1)), st.integers(-5, 5), max_size=4),
    )
)


@given(profiles)
def test_round_trip_on_valid_pairs(data):
    m, a, b = data
    pair = AxialPair(even(m, a), odd(m, b))
    assert axial_decompose(radial_to_polynomial(pair)) == pair
    assert AxialPair.from_json(pair.to_json()) == pair


@pytest.mark.parametrize("m", [5, 7])
@pytest.mark.parametrize("k", range(0, 9))
def test_laplacian_radial_lemma(m, k):
    alpha, beta = intrinsic_components(x0_power(m, k))
    zero_a, zero_b = even(m, {}), odd(m, {})
    fa = radial_to_polynomial(AxialPair(alpha, zero_b))
    fb = radial_to_polynomial(AxialPair(zero_a, beta))
    factor = 1
    for j in range((m - 1) // 2 + 1):
        if j:
            factor *= m - 2 * j + 1
        assert fa == radial_to_polynomial(AxialPair(radial_power("lower", j, alpha), zero_b)).scale(factor)
        assert fb == radial_to_polynomial(AxialPair(zero_a, radial_power("raise", j, beta))).scale(factor)
        fa, fb = laplacian(fa), laplacian(fb)


def test_pair_validation():
    with pytest.raises(PreconditionError):
        even(3, {(0, 1): 1})
    with pytest.raises(PreconditionError):
        odd(3, {(0, 1): 1}).mul_r().div_r()
    assert even(3, {(0, 2): 1}).mul_r().div_r() == even(3, {(0, 2): 1})
    assert radial_to_polynomial(AxialPair(even(3, {(0, 2): 1}), odd(3, {}))) == norm_sq_power(3, 1)
