"""Exception types raised across the package."""


class CliffckError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CliffckError, ValueError):
    """Operands live in Clifford algebras of different dimension."""


class GradeError(CliffckError, ValueError):
    """An element does not have the grade structure an operation requires."""


class NotAxial(CliffckError, ValueError):
    """A polynomial is not of the form A(x0, r) + omega B(x0, r)."""


class PreconditionError(CliffckError, ValueError):
    """Input violates a documented precondition (range, parity, dimension)."""


class IdentityViolation(CliffckError, AssertionError):
    """Two independently computed sides of an identity disagree."""

    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class ParseError(CliffckError, ValueError):
    """Syntax error in the polynomial mini-language."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
