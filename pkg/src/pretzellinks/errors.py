"""Exception types shared across the package."""


class PretzelInputError(ValueError):
    """Base class for rejected user input (bad text, bad parameters)."""


class InvalidSequenceError(PretzelInputError):
    """A pretzel sequence violates a structural requirement (zero entry, empty, ...)."""


class UnrealizableOrientationError(PretzelInputError):
    """The requested strand-orientation pattern admits no consistent diagram."""


class ParseError(PretzelInputError):
    """Malformed sequence or polynomial text."""


class ResourceLimitError(PretzelInputError):
    """An enumeration request exceeds the configured size cap."""


class UnsupportedError(PretzelInputError):
    """The operation is not defined for this input (e.g. wrong component count)."""


class SplitDiagramError(Exception):
    """Raised internally when a diagram is split; callers translate this to 0."""


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree disagreed, or an exact identity failed."""
