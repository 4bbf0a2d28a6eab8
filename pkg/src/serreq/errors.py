"""Exception hierarchy shared by every backend and the CLI."""


class SerreqError(Exception):
    """Base class for library errors."""


class UsageError(SerreqError, ValueError):
    """Malformed call: foreign-category arguments, mismatched endpoints, bad shapes."""


class PreconditionError(SerreqError):
    """A mathematical precondition of an operation does not hold."""


class NotLiftable(PreconditionError):
    """No (co)lift exists; ``condition`` names the failed requirement."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class UnsupportedOperation(SerreqError):
    """Operation is not defined for this grading or configuration."""


class ConfigurationError(SerreqError):
    """Inconsistent choice of backend, grading and zero test."""


class InvariantError(SerreqError):
    """An internal invariant was violated. Always a bug."""
