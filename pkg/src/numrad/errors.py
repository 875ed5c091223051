"""Exception hierarchy shared by all numrad modules."""


class NumradError(Exception):
    """Base class for every error raised by numrad."""


class InvalidMatrix(NumradError, ValueError):
    """Operand is not a usable finite square matrix or vector."""


class NotSquare(InvalidMatrix):
    pass


class NonFinite(InvalidMatrix):
    pass


class NotHermitian(InvalidMatrix):
    pass


class DimensionMismatch(InvalidMatrix):
    pass


class NotUnit(InvalidMatrix):
    """A vector that must have unit norm does not."""


class NotPositive(InvalidMatrix):
    """A matrix expected to be positive semidefinite has a clearly negative eigenvalue."""


class FunctionNegative(NumradError, ValueError):
    """A scalar function took a negative value on the spectrum of a positive matrix."""


class OutOfRange(NumradError, ValueError):
    """A scalar parameter lies outside its admissible interval."""


class AlphaOutOfRange(OutOfRange):
    pass


class ConvergenceFailure(NumradError, ArithmeticError):
    """An iterative kernel exhausted its iteration budget."""


class ToleranceTooSmall(NumradError, ValueError):
    """The requested tolerance cannot be certified in double precision."""


class UnknownChecker(NumradError, KeyError):
    """Checker id or alias not in the registry."""

    def __str__(self):
        return f"unknown checker {self.args[0]!r}" if self.args else "unknown checker"


class PreconditionViolated(NumradError, ValueError):
    """Operands or parameters do not satisfy a checker's hypotheses.

    The individual violated conditions are kept in ``reasons``.
    """

    def __init__(self, checker_id, reasons):
        self.checker_id = checker_id
        self.reasons = list(reasons)
        super().__init__(f"{checker_id}: " + "; ".join(self.reasons))


class ConfigError(NumradError, ValueError):
    pass


class ReportIOError(NumradError, OSError):
    pass
