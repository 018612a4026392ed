"""Exception hierarchy. The CLI maps these onto exit codes."""


class QuatmpError(Exception):
    """Base class for all package errors."""


class DomainError(QuatmpError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DimensionError(QuatmpError, ValueError):
    pass


class PreconditionError(QuatmpError, ValueError):
    pass


class InvertibilityError(QuatmpError, ArithmeticError):
    pass


class ContractError(QuatmpError, ArithmeticError):
    """A numerical accuracy contract was breached (exit code 3)."""


class ValidationError(QuatmpError, ValueError):
    """Invalid experiment configuration; ``fields`` names the offenders."""

    def __init__(self, message: str, fields: list[str] | None = None):
        super().__init__(message)
        self.fields = list(fields or [])
