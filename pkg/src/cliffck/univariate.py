"""Polynomials in x0 alone with Clifford coefficients (CK initial data)."""
from __future__ import annotations

from typing import Mapping

from gmpy2 import mpq

from .algebra import CliffordElement, Q
from .exceptions import DimensionMismatch, PreconditionError
from .polynomial import CliffordPolynomial


class UnivariatePoly:
    """``sum_k c_k x0^k`` with ``c_k`` in ``R_m``; zero coefficients are dropped."""

    __slots__ = ("m", "_c")

    def __init__(self, m: int, coeffs: Mapping[int, object] | None = None):
        if m < 1:
            raise PreconditionError("m must be positive")
        clean: dict[int, CliffordElement] = {}
        for k, c in (coeffs or {}).items():
            if int(k) < 0:
                raise PreconditionError("negative exponent")
            if not isinstance(c, CliffordElement):
                c = CliffordElement.scalar(m, c)
            elif c.m != m:
                raise DimensionMismatch(f"coefficient in R_{c.m}, expected R_{m}")
            c = clean.get(int(k), CliffordElement(m)) + c
            if c.is_zero():
                clean.pop(int(k), None)
            else:
                clean[int(k)] = c
        self.m = m
        self._c = clean

    @classmethod
    def monomial(cls, m: int, k: int, coeff=1) -> "UnivariatePoly":
        return cls(m, {k: coeff})

    @classmethod
    def zero(cls, m: int) -> "UnivariatePoly":
        return cls(m)

    @classmethod
    def from_polynomial(cls, p: CliffordPolynomial) -> "UnivariatePoly":
        out: dict[int, CliffordElement] = {}
        for exps, c in p.terms.items():
            if any(exps[1:]):
                raise PreconditionError("initial data may depend on x0 only")
            out[exps[0]] = c
        return cls(p.m, out)

    @property
    def coeffs(self) -> dict[int, CliffordElement]:
        return dict(self._c)

    def degree(self) -> int:
        return max(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def is_real(self) -> bool:
        return all(c.grades() <= {0} for c in self._c.values())

    def derivative(self, n: int = 1) -> "UnivariatePoly":
        out = {}
        for k, c in self._c.items():
            if k >= n:
                f = 1
                for t in range(n):
                    f *= k - t
                out[k - n] = c * f
        return UnivariatePoly(self.m, out)

    def antiderivative(self) -> "UnivariatePoly":
        """Primitive with zero constant term."""
        return UnivariatePoly(self.m, {k + 1: c / (k + 1) for k, c in self._c.items()})

    def scale(self, value) -> "UnivariatePoly":
        v = Q(value)
        return UnivariatePoly(self.m, {k: c * v for k, c in self._c.items()})

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        if other.m != self.m:
            raise DimensionMismatch(f"R_{self.m} vs R_{other.m}")
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out[k] + c if k in out else c
        return UnivariatePoly(self.m, out)

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.m == other.m and self._c == other._c

    def __hash__(self):
        return hash((self.m, frozenset(self._c.items())))

    def evaluate(self, x0) -> CliffordElement:
        x0 = Q(x0)
        out = CliffordElement(self.m)
        for k, c in self._c.items():
            out = out + c * (x0 ** k)
        return out

    def to_polynomial(self) -> CliffordPolynomial:
        zeros = (0,) * self.m
        return CliffordPolynomial(self.m, {(k,) + zeros: c for k, c in self._c.items()})

    def __repr__(self):
        return f"UnivariatePoly(m={self.m}, {self.to_polynomial()!s})"

    def __str__(self):
        return str(self.to_polynomial())

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": {str(k): self._c[k].to_json()["blades"] for k in sorted(self._c)}}

    @classmethod
    def from_json(cls, data: Mapping) -> "UnivariatePoly":
        m = int(data["m"])
        return cls(m, {int(k): CliffordElement.from_json({"blades": b}, m) for k, b in data["coeffs"].items()})


def as_univariate(value, m: int) -> UnivariatePoly:
    """Accept a UnivariatePoly, a CliffordPolynomial in x0, or an exact scalar."""
    if isinstance(value, UnivariatePoly):
        if value.m != m:
            raise DimensionMismatch(f"R_{value.m} vs R_{m}")
        return value
    if isinstance(value, CliffordPolynomial):
        if value.m != m:
            raise DimensionMismatch(f"R_{value.m} vs R_{m}")
        return UnivariatePoly.from_polynomial(value)
    return UnivariatePoly(m, {0: Q(value)}) if Q(value) else UnivariatePoly(m)


def x0_power(m: int, k: int, coeff=1) -> UnivariatePoly:
    return UnivariatePoly(m, {k: mpq(coeff) if not isinstance(coeff, CliffordElement) else coeff})
