"""Exception types shared across the package."""


class PencilError(Exception):
    """Base class for all errors raised by pencilreg."""


class UsageError(PencilError, ValueError):
    """An operation was called with arguments that violate its contract."""


class SingularMatrixError(PencilError, ArithmeticError):
    """A matrix that must be invertible is singular."""


class InternalError(PencilError, RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


class ContractViolation(InternalError):
    """A vector expected to lie in a subspace does not."""
