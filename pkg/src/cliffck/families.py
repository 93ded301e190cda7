"""Clifford-Appell polynomials Q_k, harmonic polynomials P_k, the
basis polynomials H0_k / H1_k, and related constants.

    Q_k  = sum_s appell(k, s)   x^(k-s) xbar^s      (monogenic)
    P_k  = sum_s harmonic(k, s) x^(k-s) xbar^s      (harmonic, real-valued)
    H0_k = [Q_k]_0
    H1_k = m/(k+1) [Q_(k+1)]_1

Coefficients are exact rationals built from Pochhammer symbols of
half-integers.
"""
from __future__ import annotations

import contextlib
import threading
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from gmpy2 import mpq

from .algebra import CliffordElement, Q
from .ck import pochhammer
from .exceptions import IdentityViolation, PreconditionError
from .polynomial import CliffordPolynomial, evaluate, norm_sq_power, vector_power

FAMILY_KINDS = ("Q", "P", "H0", "H1")
COEFF_KINDS = ("appell", "harmonic")

_overrides: dict[tuple[str, int, int, int], mpq] = {}
_override_lock = threading.Lock()
_dependent_caches: list[Callable] = []


def register_cache(fn):
    """Register an ``lru_cache`` wrapper that depends on family coefficients."""
    _dependent_caches.append(fn)
    return fn


def clear_caches():
    for fn in _dependent_caches:
        fn.cache_clear()


@contextlib.contextmanager
def perturbed_coefficient(kind: str, k: int, s: int, m: int, value):
    """Temporarily replace one family coefficient (mutation-testing hook)."""
    key = (kind, k, s, m)
    with _override_lock:
        _overrides[key] = Q(value)
        clear_caches()
    try:
        yield
    finally:
        with _override_lock:
            _overrides.pop(key, None)
            clear_caches()


def _coeff_raw(kind: str, k: int, s: int, m: int) -> mpq:
    a = mpq(m - 1, 2)
    if kind == "appell":
        return comb(k, s) * pochhammer(a + 1, k - s) * pochhammer(a, s) / pochhammer(m, k)
    return comb(k, s) * pochhammer(a, k - s) * pochhammer(a, s) / pochhammer(m - 1, k)


def coeff(kind: str, k: int, s: int, m: int) -> mpq:
    """Appell coefficient (of Q_k) or harmonic coefficient (of P_k)."""
    if kind not in COEFF_KINDS:
        raise PreconditionError(f"unknown coefficient kind {kind!r}")
    if k < 0 or not 0 <= s <= k:
        raise PreconditionError(f"need 0 <= s <= k, got k={k}, s={s}")
    if m < 2:
        raise PreconditionError("m must be >= 2")
    if _overrides:
        hit = _overrides.get((kind, k, s, m))
        if hit is not None:
            return hit
    return _coeff_raw(kind, k, s, m)


def _binomial_pair(a: int, b: int) -> dict[tuple[int, int], int]:
    """``(x0 + v)^a (x0 - v)^b`` as ``{(x0 power, v power): integer}``."""
    out: dict[tuple[int, int], int] = {}
    for i in range(a + 1):
        ci = comb(a, i)
        for j in range(b + 1):
            c = ci * comb(b, j) * (-1 if j % 2 else 1)
            key = (a - i + b - j, i + j)
            out[key] = out.get(key, 0) + c
    return out


def paravector_form(weights: dict[int, object], k: int, m: int) -> CliffordPolynomial:
    """``sum_s weights[s] x^(k-s) xbar^s`` expanded in x0..xm."""
    collected: dict[tuple[int, int], mpq] = {}
    for s, w in weights.items():
        w = Q(w)
        if not w:
            continue
        for key, c in _binomial_pair(k - s, s).items():
            collected[key] = collected.get(key, 0) + w * c
    zeros = (0,) * m
    out = CliffordPolynomial.zero(m)
    for (i, j), c in collected.items():
        if c:
            out = out + vector_power(m, j) * CliffordPolynomial.monomial(m, (i,) + zeros, c)
    return out


@register_cache
@lru_cache(maxsize=None)
def family_poly(kind: str, k: int, m: int) -> CliffordPolynomial:
    """Q_k, P_k, H0_k or H1_k in R_m."""
    if kind not in FAMILY_KINDS:
        raise PreconditionError(f"unknown family {kind!r}")
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if m < 2:
        raise PreconditionError("m must be >= 2")
    if kind == "Q":
        return paravector_form({s: coeff("appell", k, s, m) for s in range(k + 1)}, k, m)
    if kind == "P":
        return paravector_form({s: coeff("harmonic", k, s, m) for s in range(k + 1)}, k, m)
    if kind == "H0":
        return family_poly("Q", k, m).grade_project(0)
    return family_poly("Q", k + 1, m).grade_project(1).scale(mpq(m, k + 1))


def h1_explicit(k: int, m: int) -> CliffordPolynomial:
    """H1_k from ``m/((k+1)(m+k)) sum_s T_s^(k+1) (k+1-2s) x^(k+1-s) xbar^s``."""
    n = k + 1
    weights = {s: coeff("harmonic", n, s, m) * (n - 2 * s) for s in range(n + 1)}
    return paravector_form(weights, n, m).scale(mpq(m, n * (m + k)))


def h1_cross_check(k: int, m: int) -> CliffordPolynomial:
    a = family_poly("H1", k, m)
    b = h1_explicit(k, m)
    if a != b:
        raise IdentityViolation(f"H1_{k} (m={m}) disagrees with its explicit formula", lhs=a, rhs=b)
    return a


def gamma_m(m: int) -> mpq:
    """Fueter-Sce constant ``(-1)^((m-1)/2) 2^(m-1) ((m-1)/2)!^2 / (m-1)!``."""
    if m < 3 or m % 2 == 0:
        raise PreconditionError(f"gamma_m needs odd m >= 3, got {m}")
    h = (m - 1) // 2
    return mpq((-1) ** h * 2 ** (m - 1) * factorial(h) ** 2, factorial(m - 1))


def gegenbauer_coefficients(k: int, mu) -> dict[int, mpq]:
    """``C_k^mu(t) = sum_l c_l t^(k-2l)`` (standard explicit form)."""
    mu = Q(mu)
    return {
        l: (-1) ** l * pochhammer(mu, k - l) * 2 ** (k - 2 * l) / (factorial(l) * factorial(k - 2 * l))
        for l in range(k // 2 + 1)
    }


GEGENBAUER_READINGS = ("scalar", "paravector")


def gegenbauer_paravector(k: int, m: int, reading: str = "scalar", check: bool = False) -> CliffordPolynomial:
    """``k!/(m-1)_k |x|^k C_k^((m-1)/2)(t)`` expanded as a polynomial.

    ``reading='scalar'`` takes ``t = x0/|x|`` so ``|x|^k t^(k-2l) = |x|^(2l) x0^(k-2l)``;
    ``reading='paravector'`` takes ``t = x/|x|`` with left paravector powers,
    giving ``|x|^(2l) x^(k-2l)``. With ``check`` the result must equal P_k.
    """
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if m < 3 or m % 2 == 0:
        raise PreconditionError("gegenbauer link needs odd m >= 3")
    if reading not in GEGENBAUER_READINGS:
        raise PreconditionError(f"unknown reading {reading!r}")
    zeros = (0,) * m
    full_norm = lambda l: (CliffordPolynomial.monomial(m, (2,) + zeros) + norm_sq_power(m, 1)) ** l
    out = CliffordPolynomial.zero(m)
    for l, c in gegenbauer_coefficients(k, mpq(m - 1, 2)).items():
        if reading == "scalar":
            inner = CliffordPolynomial.monomial(m, (k - 2 * l,) + zeros)
        else:
            inner = paravector_form({0: 1}, k - 2 * l, m)
        out = out + full_norm(l) * inner.scale(c)
    out = out.scale(factorial(k) / pochhammer(m - 1, k))
    if check:
        target = family_poly("P", k, m)
        if out != target:
            raise IdentityViolation(f"Gegenbauer form ({reading}) differs from P_{k} at m={m}", lhs=out, rhs=target)
    return out


def riesz_partial_sum(N: int, m: int, point: Sequence) -> CliffordElement:
    """``sum_{k<=N} (m-1)_k/k! P_k(x)`` at a rational point with ``|x| < 1``.

    ``P_k(x)`` is evaluated through its coefficient form, with the paravector
    powers ``x^(k-s) xbar^s`` computed numerically-exactly at the point.
    """
    if m < 3:
        raise PreconditionError("m must be >= 3")
    if len(point) != m + 1:
        raise PreconditionError(f"point needs {m + 1} coordinates")
    pt = [Q(v) for v in point]
    if sum(v * v for v in pt) >= 1:
        raise PreconditionError("the expansion needs |x| < 1")
    x = CliffordElement.paravector(pt[0], pt[1:])
    xbar = CliffordElement.paravector(pt[0], [-v for v in pt[1:]])
    xp = [CliffordElement.scalar(m, 1)]
    xbp = [CliffordElement.scalar(m, 1)]
    for _ in range(N):
        xp.append(xp[-1] * x)
        xbp.append(xbp[-1] * xbar)
    total = CliffordElement(m)
    for k in range(N + 1):
        pk = CliffordElement(m)
        for s in range(k + 1):
            pk = pk + xp[k - s] * xbp[s] * coeff("harmonic", k, s, m)
        total = total + pk * (pochhammer(m - 1, k) / factorial(k))
    return total


def riesz_partial_sum_symbolic(N: int, m: int, point: Sequence) -> CliffordElement:
    """Same sum through the expanded polynomials P_k (slower; used as an oracle)."""
    total = CliffordElement(m)
    for k in range(N + 1):
        total = total + evaluate(family_poly("P", k, m), point) * (pochhammer(m - 1, k) / factorial(k))
    return total
