"""Polynomials in x0, x1, ..., xm with Clifford coefficients and the
first/second order operators of Clifford analysis acting on them.

A monomial is a tuple of ``m + 1`` exponents for ``(x0, ..., xm)``. The
real variables commute with everything, so a product of two polynomials
multiplies coefficients in operand order. Internally the terms are kept in a
flat dictionary ``(exponents, blade mask) -> mpq`` with no zero entries.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .algebra import (
    CliffordElement,
    Q,
    blade_product,
    blade_token,
    parse_blade_token,
)
from .exceptions import DimensionMismatch, GradeError, PreconditionError

Monomial = tuple


def _add_into(out: dict, key, value):
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class CliffordPolynomial:
    """Immutable polynomial in ``x0..xm`` with ``CliffordElement`` coefficients."""

    __slots__ = ("m", "_t", "_hash")

    def __init__(self, m: int, terms: Mapping | None = None):
        if m < 1:
            raise PreconditionError("m must be positive")
        flat: dict = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m + 1 or min(exps) < 0:
                raise PreconditionError(f"monomial {exps} invalid for m={m}")
            if not isinstance(coeff, CliffordElement):
                coeff = CliffordElement.scalar(m, coeff)
            elif coeff.m != m:
                raise DimensionMismatch(f"coefficient in R_{coeff.m}, polynomial in R_{m}")
            for mask, c in coeff.items():
                _add_into(flat, (exps, mask), c)
        self._init(m, flat)

    def _init(self, m, flat):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_t", flat)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordPolynomial is immutable")

    @classmethod
    def _raw(cls, m: int, flat: dict) -> "CliffordPolynomial":
        obj = object.__new__(cls)
        obj._init(m, flat)
        return obj

    # constructors

    @classmethod
    def zero(cls, m: int) -> "CliffordPolynomial":
        return cls._raw(m, {})

    @classmethod
    def constant(cls, m: int, value=1) -> "CliffordPolynomial":
        if not isinstance(value, CliffordElement):
            value = CliffordElement.scalar(m, value)
        zero = (0,) * (m + 1)
        return cls._raw(m, {(zero, mask): c for mask, c in value.items()})

    @classmethod
    def variable(cls, m: int, i: int) -> "CliffordPolynomial":
        """The real coordinate ``x_i`` (``0 <= i <= m``)."""
        if not 0 <= i <= m:
            raise PreconditionError(f"variable x{i} out of range for m={m}")
        exps = [0] * (m + 1)
        exps[i] = 1
        return cls._raw(m, {(tuple(exps), 0): mpq(1)})

    @classmethod
    def monomial(cls, m: int, exps: Sequence[int], coeff=1) -> "CliffordPolynomial":
        return cls(m, {tuple(exps): coeff})

    # accessors

    @property
    def terms(self) -> dict[Monomial, CliffordElement]:
        grouped: dict = {}
        for (exps, mask), c in self._t.items():
            grouped.setdefault(exps, {})[mask] = c
        return {e: CliffordElement._raw(self.m, d) for e, d in grouped.items()}

    def flat_items(self):
        """Iterate ``((exponents, mask), coefficient)`` pairs."""
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def degree(self) -> int:
        return max((sum(e) for e, _ in self._t), default=-1)

    def grades(self) -> set[int]:
        return {mask.bit_count() for _, mask in self._t}

    def coefficient(self, exps: Sequence[int]) -> CliffordElement:
        exps = tuple(exps)
        return CliffordElement._raw(self.m, {mask: c for (e, mask), c in self._t.items() if e == exps})

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, CliffordPolynomial):
            if other.m != self.m:
                raise DimensionMismatch(f"R_{self.m} vs R_{other.m}")
            return other
        if isinstance(other, CliffordElement):
            if other.m != self.m:
                raise DimensionMismatch(f"R_{self.m} vs R_{other.m}")
            return CliffordPolynomial.constant(self.m, other)
        if isinstance(other, (int, str)) or type(other).__name__ in ("mpq", "mpz", "Fraction"):
            return CliffordPolynomial.constant(self.m, Q(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for key, c in other._t.items():
            _add_into(out, key, c)
        return CliffordPolynomial._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordPolynomial._raw(self.m, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _poly_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _poly_mul(other, self)

    def scale(self, value) -> "CliffordPolynomial":
        v = Q(value)
        if not v:
            return CliffordPolynomial.zero(self.m)
        return CliffordPolynomial._raw(self.m, {k: c * v for k, c in self._t.items()})

    def __truediv__(self, value):
        if isinstance(value, (CliffordPolynomial, CliffordElement)):
            return NotImplemented
        return self.scale(1 / Q(value))

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative power")
        result = CliffordPolynomial.constant(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CliffordPolynomial):
            return self.m == other.m and self._t == other._t
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._t == other._t

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.m, frozenset(self._t.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CliffordPolynomial(m={self.m}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # calculus and projections

    def derivative(self, i: int, times: int = 1) -> "CliffordPolynomial":
        """Partial derivative with respect to ``x_i``."""
        if not 0 <= i <= self.m:
            raise PreconditionError(f"variable x{i} out of range for m={self.m}")
        out: dict = {}
        for (exps, mask), c in self._t.items():
            e = exps[i]
            if e < times:
                continue
            factor = 1
            for t in range(times):
                factor *= e - t
            new = exps[:i] + (e - times,) + exps[i + 1:]
            _add_into(out, (new, mask), c * factor)
        return CliffordPolynomial._raw(self.m, out)

    def grade_project(self, k: int) -> "CliffordPolynomial":
        if not 0 <= k <= self.m:
            raise GradeError(f"grade {k} out of range 0..{self.m}")
        return CliffordPolynomial._raw(
            self.m, {key: c for key, c in self._t.items() if key[1].bit_count() == k}
        )

    def left_mul(self, a: CliffordElement) -> "CliffordPolynomial":
        """``a * self`` with ``a`` a constant Clifford element."""
        return _poly_mul(CliffordPolynomial.constant(self.m, a), self)

    def restrict_axis(self) -> "CliffordPolynomial":
        """Set ``x1 = ... = xm = 0``."""
        return CliffordPolynomial._raw(
            self.m, {key: c for key, c in self._t.items() if not any(key[0][1:])}
        )

    def substitute_line(self, j: int = 1) -> dict[tuple[int, int], CliffordElement]:
        """Restrict to ``x = x0 + t e_j``; returns ``{(x0 exp, t exp): coeff}``."""
        out: dict = {}
        for (exps, mask), c in self._t.items():
            if any(e for i, e in enumerate(exps[1:], start=1) if i != j):
                continue
            _add_into(out, ((exps[0], exps[j]), mask), c)
        grouped: dict = {}
        for (key, mask), c in out.items():
            grouped.setdefault(key, {})[mask] = c
        return {k: CliffordElement._raw(self.m, d) for k, d in grouped.items()}

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "terms": [
                {"exps": list(e), "coeff": coeff.to_json()["blades"]}
                for e, coeff in sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CliffordPolynomial":
        m = int(data["m"])
        out = cls.zero(m)
        for term in data["terms"]:
            coeff = CliffordElement.from_json({"blades": term["coeff"]}, m)
            out = out + cls(m, {tuple(term["exps"]): coeff})
        return out


def _poly_mul(a: CliffordPolynomial, b: CliffordPolynomial) -> CliffordPolynomial:
    out: dict = {}
    bt = list(b._t.items())
    for (ea, ka), ca in a._t.items():
        for (eb, kb), cb in bt:
            sign, k = blade_product(ka, kb)
            e = tuple(x + y for x, y in zip(ea, eb))
            prod = ca * cb
            _add_into(out, (e, k), prod if sign > 0 else -prod)
    return CliffordPolynomial._raw(a.m, out)


def _order_key(exps):
    # graded order: higher total degree first, then lexicographic with x0 > x1 > ...
    return (-sum(exps), tuple(-e for e in exps))


def _sorted_flat(p: CliffordPolynomial):
    from .algebra import blade_indices

    return sorted(
        p.flat_items(),
        key=lambda kv: (_order_key(kv[0][0]), kv[0][1].bit_count(), blade_indices(kv[0][1])),
    )


def format_polynomial(p: CliffordPolynomial) -> str:
    """Pretty-print in the grammar accepted by ``cliffck.parser``."""
    if p.is_zero():
        return "0"
    out = []
    for (exps, mask), c in _sorted_flat(p):
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        if mask:
            factors.append("e" + blade_token(mask, p.m))
        mag = abs(c)
        body = " ".join(factors)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag} {body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


# operators


class Op(enum.Enum):
    DX0 = "Dx0"
    DIRAC = "Dirac"
    CR = "CR"
    CRBAR = "CRbar"
    LAPLACIAN = "Laplacian"


@dataclass(frozen=True)
class LaplacianPower:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("LaplacianPower requires n >= 0")


def dirac(p: CliffordPolynomial) -> CliffordPolynomial:
    """``sum_j e_j d/dx_j p`` acting from the left."""
    out: dict = {}
    m = p.m
    for (exps, mask), c in p._t.items():
        for j in range(1, m + 1):
            e = exps[j]
            if not e:
                continue
            sign, k = blade_product(1 << (j - 1), mask)
            new = exps[:j] + (e - 1,) + exps[j + 1:]
            v = c * e
            _add_into(out, (new, k), v if sign > 0 else -v)
    return CliffordPolynomial._raw(m, out)


def laplacian(p: CliffordPolynomial, variables: Iterable[int] | None = None) -> CliffordPolynomial:
    """Sum of pure second derivatives over ``variables`` (default all of x0..xm)."""
    idx = range(p.m + 1) if variables is None else list(variables)
    out: dict = {}
    for (exps, mask), c in p._t.items():
        for i in idx:
            e = exps[i]
            if e < 2:
                continue
            new = exps[:i] + (e - 2,) + exps[i + 1:]
            _add_into(out, (new, mask), c * (e * (e - 1)))
    return CliffordPolynomial._raw(p.m, out)


def apply_operator(kind, p: CliffordPolynomial) -> CliffordPolynomial:
    """Apply ``Dx0``, ``Dirac``, ``CR``, ``CRbar``, ``Laplacian`` or ``LaplacianPower(n)``."""
    if isinstance(kind, str):
        kind = Op(kind)
    if isinstance(kind, LaplacianPower):
        for _ in range(kind.n):
            p = laplacian(p)
        return p
    if kind is Op.DX0:
        return p.derivative(0)
    if kind is Op.DIRAC:
        return dirac(p)
    if kind is Op.CR:
        return p.derivative(0) + dirac(p)
    if kind is Op.CRBAR:
        return p.derivative(0) - dirac(p)
    if kind is Op.LAPLACIAN:
        return laplacian(p)
    raise PreconditionError(f"unknown operator {kind!r}")


@lru_cache(maxsize=None)
def norm_sq_power(m: int, p: int) -> CliffordPolynomial:
    """``(x1^2 + ... + xm^2)^p`` expanded."""
    if p == 0:
        return CliffordPolynomial.constant(m, 1)
    if p == 1:
        return CliffordPolynomial._raw(
            m,
            {(tuple(2 if i == j else 0 for i in range(m + 1)), 0): mpq(1) for j in range(1, m + 1)},
        )
    return norm_sq_power(m, p - 1) * norm_sq_power(m, 1)


def vector_variable(m: int) -> CliffordPolynomial:
    """``x_ = x1 e1 + ... + xm em``."""
    return CliffordPolynomial._raw(
        m, {(tuple(1 if i == j else 0 for i in range(m + 1)), 1 << (j - 1)): mpq(1) for j in range(1, m + 1)}
    )


@lru_cache(maxsize=None)
def vector_power(m: int, j: int) -> CliffordPolynomial:
    """``x_^j`` via ``x_^(2p) = (-1)^p |x_|^(2p)``."""
    p, odd = divmod(j, 2)
    base = norm_sq_power(m, p).scale(-1 if p % 2 else 1)
    return vector_variable(m) * base if odd else base


def _x0_power(m: int, k: int) -> CliffordPolynomial:
    return CliffordPolynomial.monomial(m, (k,) + (0,) * m)


@lru_cache(maxsize=None)
def variable_power(base: str, k: int, m: int) -> CliffordPolynomial:
    """Expand ``x^k``, ``xbar^k`` or ``x_^k`` (``base`` = 'x', 'xbar', 'xunderline')."""
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if base in ("xunderline", "xunder", "vector"):
        return vector_power(m, k)
    if base not in ("x", "xbar"):
        raise PreconditionError(f"unknown base {base!r}")
    sign = -1 if base == "xbar" else 1
    out = CliffordPolynomial.zero(m)
    binom = 1
    for j in range(k + 1):
        term = _x0_power(m, k - j) * vector_power(m, j)
        out = out + term.scale(binom * (sign ** j))
        binom = binom * (k - j) // (j + 1)
    return out


def vector_components(F: CliffordPolynomial) -> list[CliffordPolynomial]:
    """Scalar component polynomials ``F_j`` of a 1-vector valued ``F``."""
    bad = F.grades() - {1}
    if bad:
        raise GradeError(f"expected 1-vector valued polynomial, found grades {sorted(bad)}")
    comps: list[dict] = [dict() for _ in range(F.m)]
    for (exps, mask), c in F.flat_items():
        j = mask.bit_length() - 1
        comps[j][(exps, 0)] = c
    return [CliffordPolynomial._raw(F.m, d) for d in comps]


def vector_op_product(kind: str, F: CliffordPolynomial) -> CliffordPolynomial:
    """``inner``: divergence sum_j d_j F_j. ``wedge``: sum_{j<k} e_j e_k (d_j F_k - d_k F_j)."""
    comps = vector_components(F)
    m = F.m
    if kind == "inner":
        out = CliffordPolynomial.zero(m)
        for j, Fj in enumerate(comps, start=1):
            out = out + Fj.derivative(j)
        return out
    if kind == "wedge":
        out = CliffordPolynomial.zero(m)
        for j in range(1, m + 1):
            for k in range(j + 1, m + 1):
                curl = comps[k - 1].derivative(j) - comps[j - 1].derivative(k)
                if not curl.is_zero():
                    out = out + curl * CliffordElement.basis(m, j, k)
        return out
    raise PreconditionError(f"unknown vector product {kind!r}")


def evaluate(p: CliffordPolynomial, point: Sequence) -> CliffordElement:
    """Exact substitution ``(x0, ..., xm) = point``."""
    if len(point) != p.m + 1:
        raise PreconditionError(f"point needs {p.m + 1} coordinates")
    pt = [Q(v) for v in point]
    out: dict = {}
    for (exps, mask), c in p.flat_items():
        v = c
        for x, e in zip(pt, exps):
            if e:
                v = v * x ** e
        _add_into(out, mask, v)
    return CliffordElement._raw(p.m, out)


def parse_blade(token: str, m: int):
    return parse_blade_token(token, m)
