"""Exception hierarchy shared by all modules."""


class DormantError(Exception):
    """Base class for library errors."""


class ParameterError(DormantError, ValueError):
    pass


class NotInvertible(DormantError, ValueError):
    """A residue that should be a unit mod p is divisible by p."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class DomainError(DormantError, ValueError):
    pass


class ValidationError(DormantError, ValueError):
    """Malformed graph or input data. ``violations`` lists every problem found."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or [message]


class ResourceLimit(DormantError, RuntimeError):
    pass


class DegenerateSpectrum(DormantError, ArithmeticError):
    pass


class RoundingGap(DormantError, ArithmeticError):
    pass


class NoPeriodFits(DormantError, ArithmeticError):
    pass
