"""
Exception hierarchy.

Configuration problems and numerical failures are kept apart so that the
command line can map them to distinct exit codes.
"""


class TeichRetractError(Exception):
    """Base class for errors raised by teichretract."""


class SchemaError(TeichRetractError, ValueError):
    """Run configuration does not satisfy the schema."""


class InvalidChartError(TeichRetractError, ValueError):
    """Gluing data does not describe a pants decomposition."""


class InvalidPointError(TeichRetractError, ValueError):
    """Coordinates lie outside the chart domain."""


class ChartMismatchError(TeichRetractError, ValueError):
    """Objects built on different charts were combined."""


class NumericalError(TeichRetractError, ArithmeticError):
    """A numerical routine could not meet its contract."""


class NonHyperbolicError(NumericalError):
    """A curve class has trace magnitude at most 2."""


class HolonomyError(NumericalError):
    """Constructed representation violates its trace invariants."""


class EnumerationError(NumericalError):
    """Enumeration of short geodesics did not converge."""


class ChartViolationError(NumericalError):
    """A curve that is not a pants curve entered the short set."""


class ConditioningError(NumericalError):
    """Gram matrix too ill-conditioned to solve reliably."""


class StepSizeError(NumericalError):
    """Step size underflow or step budget exhausted."""
