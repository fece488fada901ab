class InvariantsError(Exception):
    """Base class for errors raised by the invariants engine."""


class FieldMismatch(InvariantsError, TypeError):
    """Operands live over different fields (or different ambient rings)."""


class NotDivisible(InvariantsError, ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InexactDivision(InvariantsError, ArithmeticError):
    """A series quotient that should be a polynomial is not."""


class NotInvariant(InvariantsError, ValueError):
    """A polynomial is not fixed by the group it was promised to be fixed by."""


class WorkBoundExceeded(InvariantsError):
    """Parameters are beyond the configured desk-scale limits."""


class ParameterError(InvariantsError, ValueError):
    """Invalid parameters for an operation."""
