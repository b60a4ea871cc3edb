"""Exception types shared across the package.

Input/validation problems derive from ``ValueError``; resource guards and
genericity failures derive from ``RuntimeError``.  The command line maps the
first family to exit code 1 and the second to exit code 2.
"""


class ArrangementError(ValueError):
    """Malformed or invalid arrangement input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class UndefinedRootSetError(ValueError):
    pass


class FlatnessError(ValueError):
    """The endomorphisms do not define a flat connection."""


class PreconditionError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


class GenericityError(RuntimeError):
    pass


class ShiftInvariantError(AssertionError):
    """A constructed shift failed its own nonresonance postcondition."""
