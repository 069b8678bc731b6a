"""Custom exceptions for folnerkit."""

from typing import Optional


class FolnerKitError(Exception):
    """Base exception for folnerkit."""

    exit_code = 1

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage

    def to_record(self) -> dict:
        """Machine-readable failure record."""
        return {
            "error": self.__class__.__name__,
            "message": str(self),
            "stage": self.stage,
            "exit_code": self.exit_code,
        }


class ConfigurationError(FolnerKitError):
    """Configuration-related errors."""

    exit_code = 2


class ModelMismatchError(FolnerKitError):
    """Elements or subsets from different group models were combined."""

    pass


class EmptySetError(FolnerKitError):
    """An operation required a nonempty finite subset."""

    pass


class WindowError(FolnerKitError):
    """A pattern is not defined on the window an operation needs."""

    pass


class PrefixExhaustedError(FolnerKitError):
    """A Følner sequence prefix was too short for the requested selection."""

    pass


class NestingError(FolnerKitError):
    """No translate nests one tile shape inside the next."""

    pass


class InfeasibleConstraintError(FolnerKitError):
    """A moment constraint cannot be met by any admissible measure."""

    pass


class InfeasibleToleranceError(FolnerKitError):
    """Subfamily weights cannot be matched within the requested tolerance."""

    pass


class ThickeningOverlapError(FolnerKitError):
    """Thickened specification windows overlap."""

    pass


class UnsupportedSystemError(FolnerKitError):
    """The requested construction is not available for this system."""

    pass


class DuplicateCellError(FolnerKitError):
    """Two support points of an atomic measure share a partition cell."""

    pass


class CertificateError(FolnerKitError):
    """A constructed object failed its independent certificate."""

    exit_code = 3


class BudgetExceededError(FolnerKitError):
    """An enumeration would exceed the configured budget."""

    exit_code = 4
