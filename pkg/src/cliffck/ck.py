"""Cauchy-Kovalevskaya extensions from the real line.

``hgck_extend(A0, A1)`` is the axially harmonic function

    sum_j x_^(2j) even[j] A0^(2j)(x0) + sum_j x_^(2j+1) odd[j] A1^(2j)(x0)

with ``even[j] = 1/(4^j j! (m/2)_j)`` and ``odd[j] = 1/(4^j j! (m/2+1)_j)``.
It restricts to ``A0`` on the real axis and ``-(1/m) Dirac`` of it restricts
to ``A1``. ``gck_extend(f0)`` is the axially monogenic extension of ``f0``,
assembled as ``hgck(f0, 0) + (1/m) hgck(0, f0')``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .algebra import CliffordElement, Q
from .exceptions import IdentityViolation, PreconditionError
from .polynomial import (
    CliffordPolynomial,
    Op,
    apply_operator,
    dirac,
    vector_power,
)
from .univariate import UnivariatePoly, as_univariate

__all__ = [
    "CkCoefficients",
    "UnivariatePoly",
    "c_const",
    "ck_coefficients",
    "gck_extend",
    "hgck_extend",
    "hgck_gck_split",
    "recover_initial",
    "series_coefficients",
]


def pochhammer(a, n: int) -> mpq:
    """Rising factorial ``(a)_n`` for exact rational ``a``."""
    a = Q(a)
    out = mpq(1)
    for t in range(n):
        out *= a + t
    return out


def c_const(m: int, j: int) -> mpq:
    """``c(m, j)`` in ``Laplacian_x_(x_^j) = c(m, j) x_^(j-2)``."""
    p, odd = divmod(j, 2)
    half = mpq(m, 2)
    return -4 * p * (half + p - (0 if odd else 1))


@dataclass(frozen=True)
class CkCoefficients:
    even: tuple
    odd: tuple
    m: int
    count: int


@lru_cache(maxsize=None)
def ck_coefficients(m: int, count: int) -> CkCoefficients:
    half = mpq(m, 2)
    even = tuple(1 / (4 ** j * factorial(j) * pochhammer(half, j)) for j in range(count))
    odd = tuple(1 / (4 ** j * factorial(j) * pochhammer(half + 1, j)) for j in range(count))
    return CkCoefficients(even, odd, m, count)


def _check_m(m: int):
    if m < 2:
        raise PreconditionError("CK extensions require m >= 2")


def hgck_extend(A0, A1, m: int) -> CliffordPolynomial:
    """Harmonic CK extension of the pair ``(A0, A1)``."""
    _check_m(m)
    A0 = as_univariate(A0, m)
    A1 = as_univariate(A1, m)
    count = max(A0.degree(), A1.degree()) // 2 + 1
    coeffs = ck_coefficients(m, max(count, 1))
    out = CliffordPolynomial.zero(m)
    for j in range(count):
        d0 = A0.derivative(2 * j)
        if not d0.is_zero():
            out = out + vector_power(m, 2 * j) * d0.to_polynomial().scale(coeffs.even[j])
        d1 = A1.derivative(2 * j)
        if not d1.is_zero():
            out = out + vector_power(m, 2 * j + 1) * d1.to_polynomial().scale(coeffs.odd[j])
    return out


def gck_extend(f0, m: int) -> CliffordPolynomial:
    """Monogenic CK extension of ``f0``."""
    _check_m(m)
    f0 = as_univariate(f0, m)
    return hgck_extend(f0, UnivariatePoly.zero(m), m) + hgck_extend(
        UnivariatePoly.zero(m), f0.derivative(), m
    ).scale(mpq(1, m))


def recover_initial(f: CliffordPolynomial, m: int, check: bool = True) -> tuple[UnivariatePoly, UnivariatePoly]:
    """``(f|_{x_=0}, -(1/m) (Dirac f)|_{x_=0})``.

    With ``check`` set, ``f`` must be harmonic and axial, otherwise a
    ``PreconditionError`` carries the offending residual.
    """
    _check_m(m)
    if f.m != m:
        raise PreconditionError(f"polynomial lives in R_{f.m}, not R_{m}")
    if check:
        from .axial import axial_decompose
        from .exceptions import NotAxial

        residual = apply_operator(Op.LAPLACIAN, f)
        if not residual.is_zero():
            raise PreconditionError(f"not harmonic: Laplacian = {residual}")
        coeff_grades = f.grades()
        if coeff_grades <= {0, 1}:
            try:
                axial_decompose(f)
            except NotAxial as exc:
                raise PreconditionError(f"not axial: {exc}") from None
    a0 = UnivariatePoly.from_polynomial(f.restrict_axis())
    a1 = UnivariatePoly.from_polynomial(dirac(f).restrict_axis()).scale(mpq(-1, m))
    return a0, a1


def hgck_gck_split(A0, A1, m: int) -> CliffordPolynomial:
    """``[gck(A0)]_0 + m [gck(primitive of A1)]_1``, asserted equal to ``hgck(A0, A1)``."""
    _check_m(m)
    A0 = as_univariate(A0, m)
    A1 = as_univariate(A1, m)
    if not (A0.is_real() and A1.is_real()):
        raise PreconditionError("the grade split needs real initial data")
    split = gck_extend(A0, m).grade_project(0) + gck_extend(A1.antiderivative(), m).grade_project(1).scale(m)
    direct = hgck_extend(A0, A1, m)
    if split != direct:
        raise IdentityViolation("grade split of GCK disagrees with HGCK", lhs=split, rhs=direct)
    return split


def series_coefficients(f: CliffordPolynomial) -> dict[int, UnivariatePoly]:
    """``A_j(x0)`` in ``f = sum_j x_^j A_j(x0)`` for an axial ``f`` with real profiles.

    Read off the line ``x = x0 + t e1``, where ``x_^j = (t e1)^j`` and
    ``e1^j`` is ``(-1)^(j/2)`` or ``(-1)^((j-1)/2) e1``.
    """
    m = f.m
    line = f.substitute_line(1)
    out: dict[int, dict[int, CliffordElement]] = {}
    e1 = CliffordElement.basis(m, 1)
    for (i, j), c in line.items():
        # divide by e1^j on the left: e1^(-j) = (-e1)^j
        inv = CliffordElement.scalar(m, 1)
        for _ in range(j):
            inv = inv * (-e1)
        a = inv * c
        out.setdefault(j, {})[i] = a
    return {j: UnivariatePoly(m, d) for j, d in out.items()}
