"""
Error types raised by the library.

Every library error derives from :class:`RieszError` and from the builtin that best matches it, so callers
may catch either. The command line maps every :class:`RieszError` onto exit code 2 and :class:`UsageError`
onto exit code 1.
"""


class RieszError(Exception):
    """Base class of all library errors."""


class DomainError(RieszError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(RieszError, ArithmeticError):
    """A singular kernel was evaluated on its diagonal (or coincident points were given)."""


class GeometryError(RieszError, ValueError):
    """A curve leaves the closed right half-plane or its defining data is degenerate."""


class UnsupportedParameterError(RieszError, ValueError):
    """The requested parameters hit a degenerate case of an evaluation formula."""


class ConvergenceError(RieszError, RuntimeError):
    """An iterative evaluation did not reach its tolerance within the allowed budget."""


class NoProgressError(RieszError, RuntimeError):
    """Every optimizer restart failed its line search at the first iteration."""


class NoSignChangeError(RieszError, ValueError):
    """A root bracket does not contain a sign change of the target function."""


class CrossCheckError(RieszError, RuntimeError):
    """Two independent representations of the same quantity disagree."""


class UsageError(ValueError):
    """Unusable input around the library: an unreadable experiment file or a malformed environment setting."""
