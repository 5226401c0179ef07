"""Exception hierarchy shared by all keigraph modules."""


class KeiError(Exception):
    """Base class for every error raised by keigraph."""


class MalformedTableError(KeiError, ValueError):
    """Input is not a square table of in-range integers."""


class KeiValidationError(KeiError):
    """A well-formed table (or map family) fails one of the kei axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotSubkeiError(KeiError):
    """An operation that needs a closed colour set was given an open one."""


class InvariantViolation(KeiError, AssertionError):
    """A runtime check of a shortest-path construction failed.

    On a genuine kei this can only mean a bug; on arbitrary input it flags
    that the input was not a kei.
    """


class CapExceededError(KeiError, ValueError):
    pass


class FormatError(KeiError, ValueError):
    """Malformed kei text file or catalog line."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OutOfRangeError(KeiError, IndexError):
    """An element or vertex index lies outside the ground set."""


class PathError(KeiError, ValueError):
    """A path-construction precondition does not hold (bad index, sequence,
    unreachable endpoint, non-shortest input)."""


class TheoremViolation(KeiError):
    """A component breaks the diameter bound. On a genuine kei this would
    contradict the theorem, so in practice it reveals a bug."""
