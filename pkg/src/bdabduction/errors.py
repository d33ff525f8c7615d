"""Exception hierarchy shared by every module of the package."""


class BDError(Exception):
    """Base class for all errors raised by :mod:`bdabduction`."""


class ParseError(BDError, ValueError):
    """Malformed formula, term, valuation or problem-file text.

    ``position`` is the 0-based character offset of the offending token
    when it is known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class FragmentError(BDError, ValueError):
    """A formula lies outside the language fragment an operation accepts."""


class TermError(BDError, ValueError):
    """A formula is not a term of the required shape, or a term is unsatisfiable
    where a satisfiable one is required."""


class ProblemError(BDError, ValueError):
    """An abduction problem is ill-formed (e.g. the theory already entails
    the observation)."""


class ResourceLimitError(BDError, RuntimeError):
    """A configured brute-force or search bound was exceeded."""
