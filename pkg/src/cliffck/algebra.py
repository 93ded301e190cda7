"""Exact arithmetic in the real Clifford algebra R_m.

Generators satisfy ``e_j e_l + e_l e_j = -2 delta_jl``. A basis blade
``e_A = e_{l1} ... e_{lk}`` (``l1 < ... < lk``) is encoded as a bitmask
whose bit ``j - 1`` is set when ``e_j`` is a factor; bitmask 0 is the scalar
unit. Coefficients are exact rationals (``gmpy2.mpq``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq

from .exceptions import DimensionMismatch, GradeError, PreconditionError

Rational = mpq


def Q(value) -> mpq:
    """Coerce ints, strings ("3/4"), Fractions and mpq to an exact rational."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


@lru_cache(maxsize=None)
def blade_product(a: int, b: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e_a e_b = sign * e_mask``.

    The sign collects one transposition per pair (i in a, j in b, i > j)
    and a factor -1 for every shared generator (``e_j^2 = -1``).
    """
    swaps = 0
    shifted = a >> 1
    while shifted:
        swaps += (shifted & b).bit_count()
        shifted >>= 1
    swaps += (a & b).bit_count()
    return (-1 if swaps & 1 else 1), a ^ b


def grade_of(mask: int) -> int:
    return mask.bit_count()


def blade_indices(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def blade_mask(indices: Iterable[int]) -> int:
    """Bitmask of the canonical blade with the given (distinct) indices."""
    mask = 0
    for j in indices:
        if mask & (1 << (j - 1)):
            raise ValueError(f"repeated generator e{j} in blade")
        mask |= 1 << (j - 1)
    return mask


def blade_token(mask: int, m: int) -> str:
    """Canonical textual token: ``""`` for the scalar, ``"12"`` for e1e2.

    For ``m >= 10`` indices are separated by dots (``"1.10"``).
    """
    idx = blade_indices(mask)
    sep = "." if m >= 10 else ""
    return sep.join(str(j) for j in idx)


def parse_blade_token(token: str, m: int) -> tuple[int, int]:
    """Parse the index part of a blade token into ``(sign, mask)``.

    Indices may come in any order; the sign of reordering is returned.
    """
    if token == "":
        return 1, 0
    if "." in token:
        parts = [int(t) for t in token.split(".")]
    elif m >= 10 and len(token) > 1:
        raise PreconditionError(f"blade token {token!r} is ambiguous for m={m}; separate indices with '.'")
    else:
        parts = [int(c) for c in token]
    sign, mask = 1, 0
    for j in parts:
        if not 1 <= j <= m:
            raise PreconditionError(f"generator e{j} out of range for m={m}")
        s, mask = blade_product(mask, 1 << (j - 1))
        sign *= s
    return sign, mask


@dataclass(frozen=True)
class Blade:
    """A basis blade ``e_A`` of R_m."""

    mask: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("m must be positive")
        if self.mask < 0 or self.mask >> self.m:
            raise PreconditionError(f"blade {self.mask:b} not contained in R_{self.m}")

    @classmethod
    def from_indices(cls, m: int, *indices: int) -> "Blade":
        return cls(blade_mask(indices), m)

    @property
    def indices(self) -> tuple[int, ...]:
        return blade_indices(self.mask)

    @property
    def grade(self) -> int:
        return self.mask.bit_count()

    def __str__(self):
        tok = blade_token(self.mask, self.m)
        return "e" + tok if tok else "1"


class CliffordElement:
    """Sparse multivector in R_m with exact rational blade coefficients.

    Instances are immutable. ``terms`` maps bitmasks to nonzero rationals.
    """

    __slots__ = ("m", "_terms", "_hash")

    def __init__(self, m: int, terms: Mapping[int, object] | None = None):
        if m < 1:
            raise PreconditionError("m must be positive")
        clean = {}
        limit = 1 << m
        for mask, c in (terms or {}).items():
            if isinstance(mask, Blade):
                mask = mask.mask
            if not 0 <= mask < limit:
                raise PreconditionError(f"blade {mask:b} not contained in R_{m}")
            c = Q(c)
            if c:
                clean[mask] = clean.get(mask, 0) + c
                if not clean[mask]:
                    del clean[mask]
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    @classmethod
    def _raw(cls, m: int, terms: dict) -> "CliffordElement":
        # trusted constructor: terms already exact and zero-free
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def scalar(cls, m: int, value=1) -> "CliffordElement":
        return cls(m, {0: value})

    @classmethod
    def basis(cls, m: int, *indices: int) -> "CliffordElement":
        """The product ``e_{i1} e_{i2} ...`` in the order given."""
        sign, mask = 1, 0
        for j in indices:
            if not 1 <= j <= m:
                raise PreconditionError(f"generator e{j} out of range for m={m}")
            s, mask = blade_product(mask, 1 << (j - 1))
            sign *= s
        return cls._raw(m, {mask: mpq(sign)})

    @classmethod
    def vector(cls, coords: Iterable) -> "CliffordElement":
        coords = list(coords)
        return cls(len(coords), {1 << j: c for j, c in enumerate(coords)})

    @classmethod
    def paravector(cls, x0, coords: Iterable) -> "CliffordElement":
        coords = list(coords)
        terms = {1 << j: c for j, c in enumerate(coords)}
        terms[0] = x0
        return cls(len(coords), terms)

    @property
    def terms(self) -> dict[int, mpq]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, blade) -> mpq:
        if isinstance(blade, Blade):
            blade = blade.mask
        return self._terms.get(blade, mpq(0))

    def scalar_part(self) -> mpq:
        return self._terms.get(0, mpq(0))

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set[int]:
        return {mask.bit_count() for mask in self._terms}

    def grade(self, k: int) -> "CliffordElement":
        return grade_project(self, k)

    def _check(self, other: "CliffordElement"):
        if self.m != other.m:
            raise DimensionMismatch(f"R_{self.m} vs R_{other.m}")

    def _coerce(self, other):
        if isinstance(other, CliffordElement):
            self._check(other)
            return other
        if isinstance(other, (int, str)) or type(other).__name__ in ("mpq", "mpz", "Fraction"):
            return CliffordElement.scalar(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mask, c in other._terms.items():
            v = out.get(mask, 0) + c
            if v:
                out[mask] = v
            else:
                out.pop(mask, None)
        return CliffordElement._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement._raw(self.m, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return clifford_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return clifford_mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, CliffordElement):
            return NotImplemented
        d = Q(other)
        return CliffordElement._raw(self.m, {k: c / d for k, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.m == other.m and self._terms == other._terms
        if isinstance(other, (int, str)) or type(other).__name__ in ("mpq", "mpz", "Fraction"):
            v = Q(other)
            return (not v and not self._terms) or self._terms == {0: v}
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.m, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CliffordElement(m={self.m}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def to_json(self) -> dict:
        return {"blades": {blade_token(k, self.m): str(c) for k, c in sorted_terms(self)}}

    @classmethod
    def from_json(cls, data: Mapping, m: int) -> "CliffordElement":
        out = CliffordElement(m)
        for tok, c in data["blades"].items():
            sign, mask = parse_blade_token(tok, m)
            out = out + CliffordElement(m, {mask: sign * Q(c)})
        return out

    @classmethod
    def parse(cls, text: str, m: int) -> "CliffordElement":
        """Parse the textual form, e.g. ``"3/2 e12 + -1 e3 + 5"``."""
        out = CliffordElement(m)
        body = text.replace("−", "-").strip()
        if not body:
            raise PreconditionError("empty element")
        for chunk in body.split("+"):
            chunk = chunk.strip()
            match = _TERM_RE.fullmatch(chunk)
            if not match:
                raise PreconditionError(f"cannot parse term {chunk!r}")
            coef, tok = match.group(1), match.group(2)
            coef = Q(coef) if coef else mpq(1)
            sign, mask = parse_blade_token(tok or "", m)
            out = out + CliffordElement(m, {mask: sign * coef})
        return out


_TERM_RE = re.compile(r"(-?\d+(?:/\d+)?)?\s*(?:e([\d.]+))?")


def sorted_terms(a: CliffordElement):
    """Terms ordered by grade, then by increasing index tuple."""
    return sorted(a.items(), key=lambda kv: (kv[0].bit_count(), blade_indices(kv[0])))


def format_element(a: CliffordElement) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for mask, c in sorted_terms(a):
        tok = blade_token(mask, a.m)
        parts.append(f"{c} e{tok}" if mask else f"{c}")
    return " + ".join(parts)


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Geometric product of two elements of the same R_m."""
    if a.m != b.m:
        raise DimensionMismatch(f"R_{a.m} vs R_{b.m}")
    out: dict[int, mpq] = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            sign, k = blade_product(ka, kb)
            v = out.get(k, 0) + (ca * cb if sign > 0 else -(ca * cb))
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return CliffordElement._raw(a.m, out)


def grade_project(a: CliffordElement, k: int) -> CliffordElement:
    """The k-vector part ``[a]_k``."""
    if not 0 <= k <= a.m:
        raise GradeError(f"grade {k} out of range 0..{a.m}")
    return CliffordElement._raw(a.m, {mask: c for mask, c in a._terms.items() if mask.bit_count() == k})


def paravector_conjugate(a: CliffordElement) -> CliffordElement:
    """``x0 + x_ -> x0 - x_`` for a paravector."""
    bad = {g for g in a.grades() if g > 1}
    if bad:
        raise GradeError(f"not a paravector: has grades {sorted(bad)}")
    return CliffordElement._raw(a.m, {mask: (-c if mask else c) for mask, c in a._terms.items()})


def generators(m: int) -> list[CliffordElement]:
    return [CliffordElement.basis(m, j) for j in range(1, m + 1)]
