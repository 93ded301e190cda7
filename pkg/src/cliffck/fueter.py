"""Slice extension, the Fueter-Sce map and its harmonic factorization,
with exact checks of the commutative diagrams linking them to the CK
extensions.

Every check computes its two sides along separate routes: iterated
differential operators on expanded polynomials on one side, closed
coefficient formulas (CK series, radial operators, family coefficients)
on the other.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .axial import AxialPair, RadialPolynomial, intrinsic_components, radial_power, radial_to_polynomial
from .ck import gck_extend, hgck_extend
from .exceptions import PreconditionError
from .families import family_poly, gamma_m, paravector_form, register_cache
from .polynomial import CliffordPolynomial, LaplacianPower, Op, apply_operator, dirac, laplacian, vector_power
from .univariate import UnivariatePoly, as_univariate, x0_power

CHECK_KINDS = ("FG", "Sceconn", "S1", "S2", "Lappn", "Monomial")
EXTRA_CHECKS = ("Mapping", "Recovery", "FF", "DiracRemark")


def _require_odd(m: int):
    if m < 3 or m % 2 == 0:
        raise PreconditionError(f"m must be odd and >= 3, got {m}")


def slice_extend(f0, m: int) -> CliffordPolynomial:
    """``sum_j x_^j f0^(j)(x0) / j!``."""
    f0 = as_univariate(f0, m)
    out = CliffordPolynomial.zero(m)
    j = 0
    d = f0
    while not d.is_zero():
        out = out + vector_power(m, j) * d.to_polynomial().scale(mpq(1, factorial(j)))
        d = d.derivative()
        j += 1
    return out


def fueter_map(kind: str, p: CliffordPolynomial, m: int) -> CliffordPolynomial:
    """``full``: Laplacian^((m-1)/2) p. ``harmonic_factor``: Laplacian^((m-3)/2) D p."""
    _require_odd(m)
    if kind == "full":
        return apply_operator(LaplacianPower((m - 1) // 2), p)
    if kind == "harmonic_factor":
        return apply_operator(LaplacianPower((m - 3) // 2), apply_operator(Op.CR, p))
    raise PreconditionError(f"unknown Fueter map kind {kind!r}")


@register_cache
@lru_cache(maxsize=None)
def _power_chain(k: int, m: int) -> tuple:
    """``(x^k, Lap x^k, Lap^2 x^k, ...)`` up to Lap^((m-1)/2)."""
    chain = [slice_extend(x0_power(m, k), m)]
    for _ in range((m - 1) // 2):
        chain.append(laplacian(chain[-1]))
    return tuple(chain)


@register_cache
@lru_cache(maxsize=None)
def _dirac_chain(k: int, m: int) -> tuple:
    """``(D x^k, Lap D x^k, ...)`` up to Lap^((m-3)/2) D x^k."""
    x_k = _power_chain(k, m)[0]
    chain = [x_k.derivative(0) + dirac(x_k)]
    for _ in range((m - 3) // 2):
        chain.append(laplacian(chain[-1]))
    return tuple(chain)


def full_image(k: int, m: int) -> CliffordPolynomial:
    """Fueter-Sce image of ``x^k`` (memoized)."""
    _require_odd(m)
    return _power_chain(k, m)[-1]


def harmonic_image(k: int, m: int) -> CliffordPolynomial:
    """``Laplacian^((m-3)/2) D x^k`` (memoized)."""
    _require_odd(m)
    return _dirac_chain(k, m)[-1]


def _witness(lhs: CliffordPolynomial, rhs: CliffordPolynomial) -> dict:
    return {"lhs": lhs.to_json(), "rhs": rhs.to_json(), "difference": (lhs - rhs).to_json()}


def _entry(check: str, k: int, m: int, ok: bool, detail) -> dict:
    return {"suite": "fueter", "check": check, "m": m, "k": k, "status": "pass" if ok else "fail", "detail": detail}


def _compare(check: str, k: int, m: int, lhs, rhs, note: str = "") -> dict:
    if lhs == rhs:
        return _entry(check, k, m, True, note or "exact equality")
    return _entry(check, k, m, False, _witness(lhs, rhs))


def _lappn(k: int, m: int) -> dict:
    f0 = x0_power(m, k)
    alpha, beta = intrinsic_components(f0)
    f = radial_to_polynomial(AxialPair(alpha, beta, m))
    Df = f.derivative(0) + dirac(f)
    h = (m - 1) // 2
    checked = []
    for l in range(h + 1):
        n = (m - 2 * l - 1) // 2
        lhs = f
        for _ in range(n):
            lhs = laplacian(lhs)
        factor = mpq(2 ** n * factorial(h), factorial(l))
        rhs = radial_to_polynomial(
            AxialPair(radial_power("lower", n, alpha), radial_power("raise", n, beta), m)
        ).scale(factor)
        if lhs != rhs:
            return _entry("Lappn", k, m, False, {"equation": "lapla1", "l": l, **_witness(lhs, rhs)})
        checked.append(f"lapla1[l={l}]")
        if l >= 1:
            lhs2 = Df
            for _ in range(n):
                lhs2 = laplacian(lhs2)
            factor2 = -mpq(2 ** (n + 1) * factorial(h), factorial(l - 1))
            profile = radial_power("raise", n, beta).div_r()
            rhs2 = radial_to_polynomial(AxialPair(profile, RadialPolynomial.zero(m, "odd"), m)).scale(factor2)
            if lhs2 != rhs2:
                return _entry("Lappn", k, m, False, {"equation": "lapla2", "l": l, **_witness(lhs2, rhs2)})
            checked.append(f"lapla2[l={l}]")
    return _entry("Lappn", k, m, True, ", ".join(checked))


def diagram_check(kind: str, k: int, m: int) -> dict:
    """One report entry for the identity ``kind`` with ``f0 = x0^k``."""
    _require_odd(m)
    if k < 0:
        raise PreconditionError("k must be >= 0")
    g = gamma_m(m)
    f0 = x0_power(m, k)
    zero = UnivariatePoly.zero(m)
    if kind == "FG":
        return _compare(kind, k, m, full_image(k, m), gck_extend(f0.derivative(m - 1), m).scale(g))
    if kind == "Sceconn":
        return _compare(kind, k, m, harmonic_image(k, m), hgck_extend(f0.derivative(m - 2), zero, m).scale(g))
    if kind == "S1":
        lhs = full_image(k, m).grade_project(1)
        return _compare(kind, k, m, lhs, hgck_extend(zero, f0.derivative(m), m).scale(g / m))
    if kind == "S2":
        lhs = full_image(k, m).grade_project(0)
        return _compare(kind, k, m, lhs, hgck_extend(f0.derivative(m - 1), zero, m).scale(g))
    if kind == "Lappn":
        return _lappn(k, m)
    if kind == "Monomial":
        if k < m - 2:
            raise PreconditionError(f"Monomial check needs k >= m-2 = {m - 2}")
        d = k - m + 2
        scale = g * mpq(factorial(k), factorial(d))
        lhs = harmonic_image(k, m)
        via_family = family_poly("P", d, m).scale(scale)
        via_hgck = hgck_extend(x0_power(m, d), zero, m).scale(scale)
        if lhs != via_family:
            return _entry(kind, k, m, False, {"route": "P_k", **_witness(lhs, via_family)})
        return _compare(kind, k, m, lhs, via_hgck, "equal to both P_k and HGCK forms")
    if kind == "Mapping":
        r1 = apply_operator(Op.CR, full_image(k, m))
        r2 = laplacian(harmonic_image(k, m))
        ok = r1.is_zero() and r2.is_zero()
        return _entry(kind, k, m, ok, "CR and Laplacian residuals vanish" if ok else {"cr": r1.to_json(), "laplacian": r2.to_json()})
    if kind == "Recovery":
        img = harmonic_image(k, m)
        on_axis = img.restrict_axis()
        expected = (
            x0_power(m, k - m + 2).to_polynomial().scale(g * mpq(factorial(k), factorial(k - m + 2)))
            if k >= m - 2
            else CliffordPolynomial.zero(m)
        )
        a1 = dirac(img).restrict_axis().scale(mpq(-1, m))
        ok = on_axis == expected and a1.is_zero()
        return _entry(kind, k, m, ok, "restriction and A1 branch match" if ok else _witness(on_axis, expected))
    if kind == "FF":
        if m != 3:
            raise PreconditionError("FF is the m = 3 case")
        x_k = _power_chain(k, m)[0]
        lhs = x_k.derivative(0) + dirac(x_k)
        return _compare(kind, k, m, lhs, hgck_extend(f0.derivative(), zero, m).scale(-2))
    if kind == "DiracRemark":
        if m != 3:
            raise PreconditionError("the closed form applies to m = 3")
        lhs = harmonic_image(k, m)
        rhs = CliffordPolynomial.zero(m)
        for s in range(1, k + 1):
            rhs = rhs + paravector_form({s - 1: 1}, k - 1, m)
        return _compare(kind, k, m, lhs, rhs.scale(-2))
    raise PreconditionError(f"unknown diagram check {kind!r}")


def fueter_suite(ms=(3, 5, 7), kmax: int | None = None) -> list[dict]:
    """All diagram checks for ``k <= kmax`` (default ``m + 6``)."""
    entries = []
    for m in ms:
        _require_odd(m)
        top = m + 6 if kmax is None else kmax
        for k in range(top + 1):
            for kind in CHECK_KINDS + ("Mapping", "Recovery"):
                if kind == "Monomial" and k < m - 2:
                    continue
                entries.append(diagram_check(kind, k, m))
            if m == 3:
                entries.append(diagram_check("FF", k, m))
                entries.append(diagram_check("DiracRemark", k, m))
    return entries
