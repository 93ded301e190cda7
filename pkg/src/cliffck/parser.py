"""Parser for the polynomial mini-language.

Grammar (whitespace-insensitive)::

    poly   := [sign] term (sign term)*
    sign   := '+' | '-' | '−'
    term   := [rational] factor*        (at least one of the two)
    factor := var ['^' uint] | blade    (optionally separated by '*')
    var    := 'x' uint                  (0 <= index <= m)
    blade  := 'e' digits                (dot-separated indices when m >= 10)

``format_polynomial`` emits this grammar, so ``parse(str(p)) == p``.
"""
from __future__ import annotations

from gmpy2 import mpq

from .algebra import CliffordElement, parse_blade_token
from .exceptions import ParseError, PreconditionError
from .polynomial import CliffordPolynomial

_SIGNS = {"+": 1, "-": -1, "−": -1}


class _Parser:
    def __init__(self, text: str, m: int):
        self.text = text
        self.m = m
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected digits", start)
        return int(self.text[start:self.pos])

    def rational(self) -> mpq:
        num = self.uint()
        if self.peek() == "/":
            self.pos += 1
            at = self.pos
            den = self.uint()
            if den == 0:
                raise ParseError("zero denominator", at)
            return mpq(num, den)
        return mpq(num)

    def blade(self) -> CliffordElement:
        start = self.pos
        self.pos += 1  # 'e'
        j = self.pos
        while j < len(self.text) and (self.text[j].isdigit() or self.text[j] == "."):
            j += 1
        token = self.text[self.pos:j]
        if not token or token.startswith(".") or token.endswith(".") or ".." in token:
            raise ParseError("malformed blade", start)
        self.pos = j
        try:
            sign, mask = parse_blade_token(token, self.m)
        except (PreconditionError, ValueError) as exc:
            raise ParseError(f"malformed blade e{token}: {exc}", start) from None
        return CliffordElement._raw(self.m, {mask: mpq(sign)})

    def term(self) -> CliffordPolynomial:
        m = self.m
        coeff = mpq(1)
        seen = False
        if self.peek().isdigit():
            coeff = self.rational()
            seen = True
        exps = [0] * (m + 1)
        element = CliffordElement.scalar(m, 1)
        while True:
            c = self.peek()
            if c == "*" and seen:
                self.pos += 1
                c = self.peek()
                if c not in ("x", "e") and not c.isdigit():
                    raise ParseError("expected factor after '*'", self.pos)
            if c == "x":
                at = self.pos
                self.pos += 1
                idx = self.uint()
                if idx > m:
                    raise ParseError(f"variable x{idx} out of range for m={m}", at)
                power = 1
                if self.peek() == "^":
                    self.pos += 1
                    power = self.uint()
                exps[idx] += power
            elif c == "e":
                element = element * self.blade()
            elif c.isdigit() and seen:
                coeff = coeff * self.rational()
            else:
                break
            seen = True
        if not seen:
            raise ParseError("expected term", self.pos)
        return CliffordPolynomial(m, {tuple(exps): element * coeff})

    def poly(self) -> CliffordPolynomial:
        total = CliffordPolynomial.zero(self.m)
        sign = 1
        if self.peek() in _SIGNS:
            sign = _SIGNS[self.peek()]
            self.pos += 1
        total = total + self.term().scale(sign)
        while True:
            c = self.peek()
            if not c:
                return total
            if c not in _SIGNS:
                raise ParseError(f"unexpected character {c!r}", self.pos)
            self.pos += 1
            total = total + self.term().scale(_SIGNS[c])


def parse_polynomial(text: str, m: int) -> CliffordPolynomial:
    """Parse ``text`` into a polynomial over ``R_m``."""
    if m < 1:
        raise PreconditionError("m must be positive")
    p = _Parser(text, m)
    if not p.peek():
        raise ParseError("empty expression", 0)
    return p.poly()
