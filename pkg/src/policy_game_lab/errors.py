"""Exception hierarchy shared by every module."""


class PolicyGameError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(PolicyGameError, ValueError):
    """A parameter lies outside its admissible domain."""

    def __init__(self, field: str, value, requirement: str):
        self.field = field
        self.value = value
        self.requirement = requirement
        super().__init__(f"{field}={value!r} invalid: {requirement}")


class InvalidProfileError(ParameterDomainError):
    """Policymaker profile that matches none of the recognized types."""


class UnsupportedModeError(PolicyGameError, ValueError):
    """Requested analysis mode is not defined for the given discount function."""


class NumericalError(PolicyGameError, ArithmeticError):
    """Iteration failed to converge or a root could not be bracketed."""
