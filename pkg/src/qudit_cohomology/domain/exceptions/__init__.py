"""Domain exceptions package."""


class QuditCohomologyError(Exception):
    """Base class for every error raised by the library."""


class ContractViolationError(QuditCohomologyError, ValueError):
    """An operation was called outside its precondition."""


class UsageError(ContractViolationError):
    """Command-line arguments are malformed or inconsistent."""


class ResourceLimitError(QuditCohomologyError):
    """The requested instance exceeds a configured desk-scale limit."""

    def __init__(self, message: str, limit_name: str = "", requested: int = 0, limit: int = 0):
        super().__init__(message)
        self.limit_name = limit_name
        self.requested = requested
        self.limit = limit


class NotCliffordError(QuditCohomologyError):
    """A unitary maps some Pauli operator outside the Pauli group."""


class PhaseConsistencyError(QuditCohomologyError):
    """A conjugation phase is not an exact power of the root of unity."""


class NotABasisError(QuditCohomologyError):
    """Phase point operators fail to form a unique-expansion operator basis."""


class InternalConsistencyError(QuditCohomologyError):
    """An identity that holds for every valid input failed; indicates a bug."""


__all__ = [
    'QuditCohomologyError',
    'ContractViolationError',
    'UsageError',
    'ResourceLimitError',
    'NotCliffordError',
    'PhaseConsistencyError',
    'NotABasisError',
    'InternalConsistencyError',
]
