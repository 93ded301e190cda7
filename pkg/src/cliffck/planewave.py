"""Sphere moments and the plane-wave form of the harmonic CK extension.

Sphere integrals are exact: each value is a rational times a power of pi
with integer or half-integer exponent. The reconstruction

    f = c_m sum_j [ (-1)^j/(2j)!   M(2j, 0)   A0^(2j)
                  + m (-1)^j/(2j+1)! M(2j+1, 1) A1^(2j) ],   c_m = Gamma(m/2) / (2 pi^(m/2))

must come out free of pi, which is asserted term by term. A Monte-Carlo
estimate of the same integral gives an independent floating-point witness.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .algebra import Q
from .ck import hgck_extend
from .exceptions import IdentityViolation, PreconditionError
from .numeric import FloatMultivector
from .polynomial import CliffordPolynomial, norm_sq_power, vector_variable
from .univariate import UnivariatePoly, as_univariate


@dataclass(frozen=True)
class PiRational:
    """``coef * pi^pi_exp`` with ``pi_exp`` a multiple of 1/2."""

    coef: mpq
    pi_exp: mpq = mpq(0)

    def __post_init__(self):
        object.__setattr__(self, "coef", Q(self.coef))
        object.__setattr__(self, "pi_exp", Q(self.pi_exp))
        if (2 * self.pi_exp).denominator != 1:
            raise PreconditionError("pi exponent must be a multiple of 1/2")
        if not self.coef:
            object.__setattr__(self, "pi_exp", mpq(0))

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coef * other.coef, self.pi_exp + other.pi_exp)
        return PiRational(self.coef * Q(other), self.pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coef / other.coef, self.pi_exp - other.pi_exp)
        return PiRational(self.coef / Q(other), self.pi_exp)

    def is_zero(self) -> bool:
        return not self.coef

    def rational(self) -> mpq:
        """The value, provided no power of pi is left."""
        if self.coef and self.pi_exp:
            raise IdentityViolation(f"residual pi^{self.pi_exp} in a quantity expected to be rational")
        return self.coef

    def __float__(self):
        return float(self.coef) * float(np.pi) ** float(self.pi_exp)

    def __str__(self):
        if not self.coef or not self.pi_exp:
            return str(self.coef)
        return f"{self.coef} pi^{self.pi_exp}"


def gamma_half_integer(n2: int) -> PiRational:
    """``Gamma(n2 / 2)`` exactly, for a positive integer ``n2``."""
    if n2 <= 0:
        raise PreconditionError("Gamma argument must be positive")
    if n2 % 2 == 0:
        return PiRational(factorial(n2 // 2 - 1))
    n = (n2 - 1) // 2
    # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    return PiRational(mpq(factorial(2 * n), 4 ** n * factorial(n)), mpq(1, 2))


def sphere_area(m: int) -> PiRational:
    """``|S^(m-1)| = 2 pi^(m/2) / Gamma(m/2)``."""
    return PiRational(2, mpq(m, 2)) / gamma_half_integer(m)


def cm_const(m: int) -> PiRational:
    """``Gamma(m/2) / (2 pi^(m/2))``, the reciprocal of the sphere area."""
    return gamma_half_integer(m) / PiRational(2, mpq(m, 2))


@dataclass(frozen=True)
class SphereMoment:
    """``int_{S^(m-1)} <x_, w>^n P_k(w) dS = value * |x_|^(n-k) P_k(x_)`` with ``P_0 = 1``, ``P_1(w) = w``."""

    m: int
    n: int
    k: int
    value: PiRational

    def shape(self) -> CliffordPolynomial:
        """``|x_|^(n-k) x_^k`` as a polynomial (``n - k`` even)."""
        base = norm_sq_power(self.m, (self.n - self.k) // 2)
        return vector_variable(self.m) * base if self.k else base


def sphere_moment(n: int, k: int, m: int) -> SphereMoment:
    """Funk-Hecke moment of degree ``n`` against a harmonic of degree ``k`` in {0, 1}."""
    if k not in (0, 1):
        raise PreconditionError("only harmonic degrees 0 and 1 are supported")
    if n < k:
        raise PreconditionError("need n >= k")
    if m < 2:
        raise PreconditionError("m must be >= 2")
    if (n - k) % 2:
        return SphereMoment(m, n, k, PiRational(0))
    value = (
        PiRational(mpq(factorial(n), factorial(n - k) * 2 ** k) * 2, mpq(m - 1, 2))
        * gamma_half_integer(n - k + 1)
        / gamma_half_integer(m + n + k)
    )
    return SphereMoment(m, n, k, value)


def even_moment_from_power_identity(j: int, m: int) -> PiRational:
    """``int <x_, w>^(2j) dS / |x_|^(2j)`` read off the identity
    ``|x_|^(2j) = Gamma(m/2+j) / (2 pi^((m-1)/2) Gamma(j+1/2)) int <x_, w>^(2j) dS``."""
    return PiRational(2, mpq(m - 1, 2)) * gamma_half_integer(2 * j + 1) / gamma_half_integer(m + 2 * j)


def odd_moment_from_power_identity(j: int, m: int) -> PiRational:
    """Same for ``int <x_, w>^(2j+1) w dS = c x_ |x_|^(2j)``."""
    return PiRational(2 * j + 1, mpq(m - 1, 2)) * gamma_half_integer(2 * j + 1) / gamma_half_integer(m + 2 * j + 2)


def planewave_reconstruct(A0, A1, m: int, check: bool = True) -> CliffordPolynomial:
    """Assemble the extension from exact sphere moments; optionally assert it equals HGCK."""
    if m < 2:
        raise PreconditionError("m must be >= 2")
    A0 = as_univariate(A0, m)
    A1 = as_univariate(A1, m)
    cm = cm_const(m)
    out = CliffordPolynomial.zero(m)
    j = 0
    d0, d1 = A0, A1
    while not (d0.is_zero() and d1.is_zero()):
        sign = -1 if j % 2 else 1
        if not d0.is_zero():
            mom = sphere_moment(2 * j, 0, m)
            weight = (cm * mom.value * mpq(sign, factorial(2 * j))).rational()
            out = out + mom.shape() * d0.to_polynomial().scale(weight)
        if not d1.is_zero():
            mom = sphere_moment(2 * j + 1, 1, m)
            weight = (cm * mom.value * mpq(sign * m, factorial(2 * j + 1))).rational()
            out = out + mom.shape() * d1.to_polynomial().scale(weight)
        d0 = d0.derivative(2)
        d1 = d1.derivative(2)
        j += 1
    if check:
        direct = hgck_extend(A0, A1, m)
        if out != direct:
            raise IdentityViolation("plane-wave reconstruction differs from HGCK", lhs=out, rhs=direct)
    return out


@dataclass(frozen=True)
class MCResult:
    estimate: FloatMultivector
    stderr: FloatMultivector
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {
            "estimate": self.estimate.to_dict(),
            "stderr": self.stderr.to_dict(),
            "samples": self.samples,
            "seed": self.seed,
        }


CHUNK = 16384


def _even_derivatives(A: UnivariatePoly, x0: float) -> list[FloatMultivector]:
    """Float values of ``A, A'', A'''', ...`` at ``x0``."""
    out = []
    d = A
    while not d.is_zero():
        out.append(_eval_float(d, x0))
        d = d.derivative(2)
    return out


def _eval_float(p: UnivariatePoly, x0: float) -> FloatMultivector:
    terms: dict[int, float] = {}
    for k, c in p.coeffs.items():
        for mask, v in c.items():
            terms[mask] = terms.get(mask, 0.0) + float(v) * x0 ** k
    return FloatMultivector(p.m, terms)


def _chunk_moments(seed_seq, size: int, m: int, xv: np.ndarray, blades: list, c0: np.ndarray, c1: np.ndarray):
    rng = np.random.default_rng(seed_seq)
    w = rng.standard_normal((size, m))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    t = w @ xv
    J0 = c0.shape[0]
    J1 = c1.shape[0]
    vals = np.zeros((size, len(blades)))
    tt = t * t
    power = np.ones(size)
    for j in range(max(J0, J1)):
        sign = -1.0 if j % 2 else 1.0
        if j < J0:
            vals += np.outer(sign * power / factorial(2 * j), c0[j])
        if j < J1:
            odd = sign * power * t * m / factorial(2 * j + 1)
            # c1[j, i, :] is e_(i+1) * A1^(2j)(x0) on the blade basis
            vals += (odd[:, None] * w) @ c1[j]
        power = power * tt
    return vals.sum(axis=0), (vals * vals).sum(axis=0)


def planewave_mc(A0, A1, m: int, samples: int, seed: int = 0, point: Sequence = None, workers: int | None = None) -> MCResult:
    """Monte-Carlo estimate of the plane-wave integral at ``point``.

    Directions are Gaussian samples normalized onto the sphere. Samples are
    drawn in fixed-size chunks, each from its own child of
    ``SeedSequence(seed)``, so the result does not depend on ``workers``.
    """
    if samples <= 0:
        raise PreconditionError("samples must be positive")
    if not 2 <= m <= 7:
        raise PreconditionError("Monte-Carlo witness supports 2 <= m <= 7")
    A0 = as_univariate(A0, m)
    A1 = as_univariate(A1, m)
    if point is None or len(point) != m + 1:
        raise PreconditionError(f"point needs {m + 1} coordinates")
    x0 = float(Q(point[0])) if not isinstance(point[0], float) else point[0]
    xv = np.array([float(Q(v)) if not isinstance(v, float) else v for v in point[1:]])

    d0 = _even_derivatives(A0, x0)
    d1 = _even_derivatives(A1, x0)
    masks = set()
    e = [FloatMultivector(m, {1 << i: 1.0}) for i in range(m)]
    left1 = [[ei * a for ei in e] for a in d1]
    for a in d0:
        masks |= set(a.terms)
    for row in left1:
        for b in row:
            masks |= set(b.terms)
    blades = sorted(masks, key=lambda k: (k.bit_count(), k)) or [0]
    index = {b: i for i, b in enumerate(blades)}
    c0 = np.zeros((len(d0), len(blades)))
    for j, a in enumerate(d0):
        for mask, v in a.terms.items():
            c0[j, index[mask]] = v
    c1 = np.zeros((len(d1), m, len(blades)))
    for j, row in enumerate(left1):
        for i, b in enumerate(row):
            for mask, v in b.terms.items():
                c1[j, i, index[mask]] = v

    nchunks = -(-samples // CHUNK)
    sizes = [CHUNK] * (nchunks - 1) + [samples - CHUNK * (nchunks - 1)]
    children = np.random.SeedSequence(seed).spawn(nchunks)
    if workers is None:
        workers = int(os.environ.get("CK_THREADS", "1") or 1)
    jobs = [(children[c], sizes[c], m, xv, blades, c0, c1) for c in range(nchunks)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _chunk_moments(*a), jobs))
    else:
        parts = [_chunk_moments(*a) for a in jobs]
    s1 = np.zeros(len(blades))
    s2 = np.zeros(len(blades))
    for a, b in parts:  # fixed order keeps the float sum reproducible
        s1 += a
        s2 += b
    mean = s1 / samples
    var = np.maximum(s2 / samples - mean * mean, 0.0) * samples / max(samples - 1, 1)
    se = np.sqrt(var / samples)
    # c_m |S^(m-1)| = 1, so the integral estimate is the sample mean
    est = FloatMultivector(m, {b: mean[i] for i, b in enumerate(blades)})
    err = FloatMultivector(m, {b: se[i] for i, b in enumerate(blades)})
    return MCResult(est, err, samples, seed)
