"""Exception hierarchy shared across the package.

Everything user-facing derives from ``InterceptGraphError`` so the CLI and
the HTTP service can map "bad input" (exit code 2 / HTTP 400) apart from
internal failures (exit code 1 / HTTP 500).
"""


class InterceptGraphError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(InterceptGraphError):
    """Input bytes could not be decoded into the expected format."""


class SchemaError(InterceptGraphError):
    """Input parsed but does not match the documented schema."""


class ValidationError(InterceptGraphError):
    """Input matched the schema but violates a dataset invariant."""


class ArgumentError(InterceptGraphError, ValueError):
    """A numeric or structural argument is outside its documented domain."""


class UndefinedMeasureError(ArgumentError):
    """A comparison measure is undefined for the given operands."""


class TargetNotFoundError(InterceptGraphError):
    """A solver exhausted its search space without meeting the target."""


class LayoutError(InterceptGraphError):
    """A scene cannot be assembled from the given dataset and config."""


class RenderError(InterceptGraphError):
    """A chart cannot be drawn from the given inputs."""
