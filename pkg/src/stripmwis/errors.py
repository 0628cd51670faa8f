"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: input/parse problems are exit 2,
capacity limits exit 4, broken internal invariants exit 5.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToolkitError):
    """The caller supplied invalid input (unknown vertex, bad parameter)."""


class ParseError(InputError):
    """A text file could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(ToolkitError):
    """A size guard or search budget was exceeded."""


class GenerationError(CapacityError):
    """Instance generation exhausted its budget."""


class ContractViolation(ToolkitError):
    """A cross-module contract was violated (missing profile, bad restriction)."""


class InvariantError(ToolkitError):
    """An internal structural invariant failed; signals a bug or an input
    outside the promised graph class."""
