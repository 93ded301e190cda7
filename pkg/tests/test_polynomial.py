import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cliffck.algebra import CliffordElement
from cliffck.exceptions import GradeError, PreconditionError
from cliffck.polynomial import (
    CliffordPolynomial,
    LaplacianPower,
    Op,
    apply_operator,
    dirac,
    evaluate,
    format_polynomial,
    laplacian,
    norm_sq_power,
    variable_power,
    vector_op_product,
    vector_power,
    vector_variable,
)

from conftest import rand_poly


def X(m, i):
    return CliffordPolynomial.variable(m, i)


def E(m, *idx):
    return CliffordElement.basis(m, *idx)


def xvec(m):
    out = CliffordPolynomial.zero(m)
    for j in range(1, m + 1):
        out = out + X(m, j) * E(m, j)
    return out


def test_operator_examples():
    m = 3
    assert apply_operator(Op.DIRAC, xvec(m)) == -3
    x = X(m, 0) + xvec(m)
    assert apply_operator(Op.LAPLACIAN, x * x * x) == X(m, 0).scale(-12) + xvec(m).scale(-4)
    q1 = X(m, 0) + xvec(m).scale(mpq(1, 3))
    assert apply_operator(Op.CR, q1).is_zero()


def test_power_examples():
    assert vector_power(2, 2) == -(X(2, 1) * X(2, 1)) - X(2, 2) * X(2, 2)
    for m in (1, 2, 4):
        x = X(m, 0) + xvec(m)
        expected = X(m, 0) * X(m, 0) - norm_sq_power(m, 1) + (X(m, 0) * xvec(m)).scale(2)
        assert variable_power("x", 2, m) == expected == x * x
    assert laplacian(vector_power(3, 3), [1, 2, 3]) == xvec(3).scale(-10)
    assert variable_power("xbar", 3, 2) == (X(2, 0) - xvec(2)) ** 3
    assert variable_power("xunderline", 4, 3) == vector_power(3, 4) == norm_sq_power(3, 2)


def test_vector_products_examples():
    m = 3
    assert vector_op_product("inner", xvec(m)) == 3
    assert vector_op_product("wedge", X(m, 0) * xvec(m)).is_zero()
    h = (X(m, 0) ** 2) * xvec(m) - (norm_sq_power(m, 1) * xvec(m)).scale(mpq(1, 5))
    assert vector_op_product("inner", h) == (X(m, 0) ** 2).scale(3) - norm_sq_power(m, 1)
    with pytest.raises(GradeError):
        vector_op_product("inner", X(m, 0))


def test_evaluate_examples():
    m = 3
    x = variable_power("x", 2, m)
    assert evaluate(x, (1, 0, 0, 0)) == 1
    xx = variable_power("x", 1, m) * variable_power("xbar", 1, m)
    assert evaluate(xx, (2, 3, 5, 7)) == 4 + 9 + 25 + 49
    p2 = X(m, 0) ** 2 - norm_sq_power(m, 1).scale(mpq(1, 3))
    assert evaluate(p2, (1, 1, 0, 0)) == mpq(2, 3)


@pytest.mark.parametrize("m", range(2, 8))
def test_vector_power_laplacian_closed_form(m):
    # c(m, j) from the parity-split closed form
    for j in range(2, 11):
        p, odd = divmod(j, 2)
        c = -4 * p * (mpq(m, 2) + p - 1) if not odd else -4 * p * (mpq(m, 2) + p)
        assert laplacian(vector_power(m, j), range(1, m + 1)) == vector_power(m, j - 2).scale(c)


def test_factorization_seeded(rng):
    for i in range(200):
        m = 2 + i % 3
        p = rand_poly(rng, m, 4)
        lap = apply_operator(Op.LAPLACIAN, p)
        assert lap == apply_operator(Op.CR, apply_operator(Op.CRBAR, p))
        assert lap == apply_operator(Op.CRBAR, apply_operator(Op.CR, p))


seeds = st.integers(0, 10_000)


@given(seeds, st.integers(1, 4))
def test_linearity_and_commutation(seed, m):
    import random

    r = random.Random(seed)
    p, q = rand_poly(r, m, 4), rand_poly(r, m, 4)
    c = mpq(r.randint(-9, 9), r.randint(1, 9))
    for op in Op:
        assert apply_operator(op, p + q.scale(c)) == apply_operator(op, p) + apply_operator(op, q).scale(c)
    assert dirac(p.derivative(0)) == dirac(p).derivative(0)
    assert apply_operator(LaplacianPower(2), p) == laplacian(laplacian(p))


@given(seeds, st.integers(1, 4))
def test_dirac_of_vector_field_splits_by_grade(seed, m):
    import random

    r = random.Random(seed)
    F = CliffordPolynomial.zero(m)
    for j in range(1, m + 1):
        F = F + rand_poly(r, m, 3).grade_project(0) * E(m, j)
    D = dirac(F)
    assert D == -vector_op_product("inner", F) + vector_op_product("wedge", F)
    assert D.grades() <= {0, 2}


@given(seeds, st.integers(1, 4))
def test_json_round_trip(seed, m):
    import random

    p = rand_poly(random.Random(seed), m, 5)
    assert CliffordPolynomial.from_json(p.to_json()) == p


def test_json_shape_and_order():
    m = 3
    p = X(m, 1) + (X(m, 0) ** 2)
    data = p.to_json()
    assert data == {
        "m": 3,
        "terms": [
            {"exps": [2, 0, 0, 0], "coeff": {"": "1"}},
            {"exps": [0, 1, 0, 0], "coeff": {"": "1"}},
        ],
    }
    assert format_polynomial(p) == "x0^2 + x1"


def test_noncommutative_coefficients():
    m = 2
    a = CliffordPolynomial.constant(m, E(m, 1))
    b = CliffordPolynomial.constant(m, E(m, 2))
    assert a * b == -(b * a)
    assert vector_variable(m) == xvec(m)


def test_preconditions():
    with pytest.raises(PreconditionError):
        variable_power("y", 2, 3)
    with pytest.raises(PreconditionError):
        evaluate(X(2, 0), (1, 2))
    with pytest.raises(ValueError):
        LaplacianPower(-1)
