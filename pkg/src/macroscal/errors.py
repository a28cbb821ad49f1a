"""Exception types shared by every module."""


class MacroscalError(Exception):
    """Base class for errors raised by macroscal."""


class DomainError(MacroscalError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(MacroscalError, ArithmeticError):
    """An iterative method did not reach its tolerance."""
