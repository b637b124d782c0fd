"""Exception hierarchy shared across the package."""


class CapdiscError(Exception):
    """Base class for all package errors."""


class DomainError(CapdiscError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedSpaceError(CapdiscError):
    """The requested operation has no model on this space."""


class NumericError(CapdiscError, ArithmeticError):
    """A numerical guard tripped (overflow, non-convergence, bad energy)."""


class PointFileError(CapdiscError):
    """A point file is malformed or violates the normalization rules."""
