from typing import Any, List, Optional


class GeometryError(ValueError):
    """Base class for every error raised by the geometry services."""


class ConfigError(GeometryError):
    pass


class FieldMismatchError(GeometryError):
    pass


class ReducibleModulusError(GeometryError):
    pass


class ZeroDivisionFieldError(GeometryError, ZeroDivisionError):
    pass


class SingularFormError(GeometryError):
    pass


class HyperovalRecoveryError(GeometryError):
    pass


class LemmaPreconditionError(GeometryError):
    """The input set does not satisfy the hypotheses; report holds the condition report when one was computed."""

    def __init__(self, message: str, report: Optional[Any] = None):
        self.report = report
        super().__init__(message)


class SolidSetFormatError(GeometryError):
    """Raised for unparseable or out-of-range JSONL input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConditionIViolated(GeometryError):
    """A point lies in a number of solids outside {0, q^3/2, (q^3-q^2)/2}."""

    def __init__(self, witnesses: List[Any]):
        self.witnesses = witnesses
        super().__init__(f"condition (I) fails at {len(witnesses)} reported point(s)")
