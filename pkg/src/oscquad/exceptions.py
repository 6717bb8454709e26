"""Exception types raised across the package."""


class OscquadError(Exception):
    """Base class for all package errors."""


class DomainError(OscquadError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(OscquadError, ValueError):
    """An argument lies outside the range over which an algorithm is validated."""


class ConditioningError(OscquadError, ValueError):
    """The requested construction is too ill-conditioned to be trusted."""


class GridError(OscquadError, ValueError):
    """A grid is too small or inconsistent for the requested operation."""


class OracleConvergenceError(OscquadError, RuntimeError):
    """The reference integrator did not reach its tolerance within budget."""


class NumericalError(OscquadError, ArithmeticError):
    """A computation produced a non-finite or otherwise unusable result."""
