"""Axial functions ``A(x0, r) + omega B(x0, r)`` with ``r = |x_|`` and
``omega = x_ / r``.

``A`` is even in ``r`` and ``B`` is odd, so ``A + omega B`` is a genuine
polynomial in ``x0..xm``. ``B`` keeps its leading factor of ``r``; every
division by ``r`` below is therefore exact.
"""
from __future__ import annotations

from math import factorial
from typing import Mapping

from gmpy2 import mpq

from .algebra import CliffordElement, Q
from .exceptions import DimensionMismatch, NotAxial, PreconditionError
from .polynomial import CliffordPolynomial, norm_sq_power, vector_variable
from .univariate import UnivariatePoly

EVEN, ODD = "even", "odd"


class RadialPolynomial:
    """``sum c_{ij} x0^i r^j`` with a fixed parity in ``r``."""

    __slots__ = ("m", "parity", "_t")

    def __init__(self, m: int, parity: str, terms: Mapping | None = None):
        if parity not in (EVEN, ODD):
            raise PreconditionError(f"parity must be 'even' or 'odd', got {parity!r}")
        want = 0 if parity == EVEN else 1
        clean: dict[tuple[int, int], CliffordElement] = {}
        for (i, j), c in (terms or {}).items():
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise PreconditionError("exponents must be nonnegative")
            if not isinstance(c, CliffordElement):
                c = CliffordElement.scalar(m, c)
            elif c.m != m:
                raise DimensionMismatch(f"R_{c.m} vs R_{m}")
            if c.is_zero():
                continue
            if j % 2 != want:
                raise PreconditionError(f"r^{j} violates {parity} parity")
            c = clean[(i, j)] + c if (i, j) in clean else c
            if c.is_zero():
                del clean[(i, j)]
            else:
                clean[(i, j)] = c
        self.m = m
        self.parity = parity
        self._t = clean

    @classmethod
    def zero(cls, m: int, parity: str) -> "RadialPolynomial":
        return cls(m, parity)

    @property
    def terms(self) -> dict[tuple[int, int], CliffordElement]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_real(self) -> bool:
        return all(c.grades() <= {0} for c in self._t.values())

    def _check(self, other: "RadialPolynomial"):
        if other.m != self.m:
            raise DimensionMismatch(f"R_{self.m} vs R_{other.m}")
        if other.parity != self.parity:
            raise PreconditionError("cannot add radial polynomials of different parity")

    def __add__(self, other: "RadialPolynomial") -> "RadialPolynomial":
        self._check(other)
        out = dict(self._t)
        for key, c in other._t.items():
            out[key] = out[key] + c if key in out else c
        return RadialPolynomial(self.m, self.parity, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "RadialPolynomial":
        v = value if isinstance(value, CliffordElement) else Q(value)
        return RadialPolynomial(self.m, self.parity, {k: c * v for k, c in self._t.items()})

    def __eq__(self, other):
        if not isinstance(other, RadialPolynomial):
            return NotImplemented
        if self.m != other.m:
            return False
        if not self._t and not other._t:
            return True
        return self.parity == other.parity and self._t == other._t

    def __hash__(self):
        return hash((self.m, self.parity, frozenset(self._t.items())))

    def __repr__(self):
        body = " + ".join(f"({c}) x0^{i} r^{j}" for (i, j), c in sorted(self._t.items())) or "0"
        return f"RadialPolynomial({self.parity}, {body})"

    def d_x0(self) -> "RadialPolynomial":
        return RadialPolynomial(
            self.m, self.parity, {(i - 1, j): c * i for (i, j), c in self._t.items() if i}
        )

    def d_r(self) -> "RadialPolynomial":
        """Flips parity. An even profile has no r^0 term left after differentiation."""
        flip = ODD if self.parity == EVEN else EVEN
        return RadialPolynomial(self.m, flip, {(i, j - 1): c * j for (i, j), c in self._t.items() if j})

    def div_r(self) -> "RadialPolynomial":
        """Exact division by r; only defined for odd profiles."""
        if self.parity != ODD:
            raise PreconditionError("division by r requires odd parity")
        return RadialPolynomial(self.m, EVEN, {(i, j - 1): c for (i, j), c in self._t.items()})

    def mul_r(self) -> "RadialPolynomial":
        flip = ODD if self.parity == EVEN else EVEN
        return RadialPolynomial(self.m, flip, {(i, j + 1): c for (i, j), c in self._t.items()})

    def to_json_list(self) -> list:
        out = []
        for (i, j), c in sorted(self._t.items()):
            if c.grades() <= {0}:
                out.append([i, j, str(c.scalar_part())])
            else:
                out.append([i, j, c.to_json()["blades"]])
        return out

    @classmethod
    def from_json_list(cls, m: int, parity: str, rows) -> "RadialPolynomial":
        terms = {}
        for i, j, c in rows:
            if isinstance(c, dict):
                c = CliffordElement.from_json({"blades": c}, m)
            else:
                c = CliffordElement.scalar(m, Q(c))
            terms[(i, j)] = c
        return cls(m, parity, terms)


class AxialPair:
    """The profile pair ``(A, B)`` of ``f = A + omega B``."""

    __slots__ = ("A", "B", "m")

    def __init__(self, A: RadialPolynomial, B: RadialPolynomial, m: int | None = None):
        m = A.m if m is None else m
        if A.m != m or B.m != m:
            raise DimensionMismatch("profiles and pair must share m")
        if not A.is_zero() and A.parity != EVEN:
            raise PreconditionError("A must have even parity")
        if not B.is_zero() and B.parity != ODD:
            raise PreconditionError("B must have odd parity")
        self.A = A if A.parity == EVEN else RadialPolynomial.zero(m, EVEN)
        self.B = B if B.parity == ODD else RadialPolynomial.zero(m, ODD)
        self.m = m

    def __eq__(self, other):
        return isinstance(other, AxialPair) and (self.m, self.A, self.B) == (other.m, other.A, other.B)

    def __hash__(self):
        return hash((self.m, self.A, self.B))

    def __repr__(self):
        return f"AxialPair(m={self.m}, A={self.A!r}, B={self.B!r})"

    def to_json(self) -> dict:
        return {"A": self.A.to_json_list(), "B": self.B.to_json_list(), "m": self.m}

    @classmethod
    def from_json(cls, data: Mapping) -> "AxialPair":
        m = int(data["m"])
        return cls(
            RadialPolynomial.from_json_list(m, EVEN, data["A"]),
            RadialPolynomial.from_json_list(m, ODD, data["B"]),
            m,
        )


def radial_to_polynomial(pair: AxialPair) -> CliffordPolynomial:
    """Substitute ``r^(2j) -> |x_|^(2j)`` and ``omega r^(2j+1) -> x_ |x_|^(2j)``."""
    m = pair.m
    zeros = (0,) * m
    out = CliffordPolynomial.zero(m)
    for (i, j), c in pair.A.terms.items():
        out = out + CliffordPolynomial.monomial(m, (i,) + zeros) * norm_sq_power(m, j // 2) * c
    xv = vector_variable(m)
    for (i, j), c in pair.B.terms.items():
        out = out + xv * CliffordPolynomial.monomial(m, (i,) + zeros) * norm_sq_power(m, j // 2) * c
    return out


def axial_decompose(p: CliffordPolynomial) -> AxialPair:
    """Split a paravector-valued polynomial into its radial profiles.

    The profiles are read off the line ``x = x0 + t e1`` and the result is
    re-expanded and compared with ``p``; any mismatch raises ``NotAxial``.
    """
    m = p.m
    bad = p.grades() - {0, 1}
    if bad:
        raise NotAxial(f"grades {sorted(bad)} present; expected paravector values")
    line = p.substitute_line(1)
    a_terms: dict = {}
    b_terms: dict = {}
    for (i, j), c in line.items():
        s = c.coefficient(0)
        v = c.coefficient(1)
        if s:
            if j % 2:
                raise NotAxial("scalar part is odd in |x_|")
            a_terms[(i, j)] = s
        if v:
            if not j % 2:
                raise NotAxial("vector part is not x_ times a radial function")
            b_terms[(i, j)] = v
    pair = AxialPair(RadialPolynomial(m, EVEN, a_terms), RadialPolynomial(m, ODD, b_terms), m)
    if radial_to_polynomial(pair) != p:
        raise NotAxial("polynomial is not of the form A(x0, |x_|) + omega B(x0, |x_|)")
    return pair


def vekua_residual(pair: AxialPair) -> tuple[RadialPolynomial, RadialPolynomial]:
    """``(dA/dx0 - dB/dr - (m-1) B / r, dB/dx0 + dA/dr)``; zero iff monogenic."""
    A, B, m = pair.A, pair.B, pair.m
    first = A.d_x0() - B.d_r() - B.div_r().scale(m - 1)
    second = B.d_x0() + A.d_r()
    return first, second


def _radial_step(kind: str, g: RadialPolynomial) -> RadialPolynomial:
    # lower: (1/r d/dr) r^(2i) = 2i r^(2i-2); raise: (d/dr 1/r) r^(2i+1) = 2i r^(2i-1)
    out = {}
    for (i, j), c in g.terms.items():
        if j >= 2:
            out[(i, j - 2)] = c * (j if kind == "lower" else j - 1)
    return RadialPolynomial(g.m, g.parity, out)


def radial_power(kind: str, j: int, g: RadialPolynomial) -> RadialPolynomial:
    """``(1/r d/dr)^j`` on even profiles (``lower``) or ``(d/dr 1/r)^j`` on odd ones (``raise``)."""
    if j < 0:
        raise PreconditionError("j must be >= 0")
    if kind == "lower":
        if g.parity != EVEN and not g.is_zero():
            raise PreconditionError("lower requires an even profile")
    elif kind == "raise":
        if g.parity != ODD and not g.is_zero():
            raise PreconditionError("raise requires an odd profile")
    else:
        raise PreconditionError(f"unknown radial operator {kind!r}")
    for _ in range(j):
        g = _radial_step(kind, g)
    return g


def intrinsic_components(f0: UnivariatePoly) -> tuple[RadialPolynomial, RadialPolynomial]:
    """Real and imaginary parts ``(alpha, beta)`` of ``f0(x0 + i r)``."""
    if not f0.is_real():
        raise PreconditionError("intrinsic functions need real coefficients")
    m = f0.m
    alpha: dict = {}
    beta: dict = {}
    deriv = f0
    n = 0
    while not deriv.is_zero():
        sign = -1 if (n // 2) % 2 else 1
        scale = mpq(sign, factorial(n))
        target = alpha if n % 2 == 0 else beta
        for i, c in deriv.coeffs.items():
            key = (i, n)
            target[key] = target[key] + c * scale if key in target else c * scale
        deriv = deriv.derivative()
        n += 1
    return RadialPolynomial(m, EVEN, alpha), RadialPolynomial(m, ODD, beta)
