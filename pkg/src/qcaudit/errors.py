"""Exception types raised across the package."""


class QCAuditError(Exception):
    """Base class for all package errors."""


class ConfigurationError(QCAuditError):
    """A configuration source (e.g. an override file) could not be read."""


class ValidationError(QCAuditError, ValueError):
    """An argument violates a documented precondition or invariant."""


class DomainError(QCAuditError, ValueError):
    """A point lies outside the region where a formula is defined."""


class OutOfRangeError(QCAuditError, ValueError):
    """A discrete parameter exceeds the supported range."""
