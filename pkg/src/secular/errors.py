"""Exception hierarchy shared by the whole engine.

The CLI maps these onto exit codes: ParseError -> 2, PreconditionError -> 3,
PathUnavailableError -> 4.  InternalError flags a violated mathematical
invariant (e.g. a symmetric definite pencil producing complex roots) and is
never expected to fire on valid inputs.
"""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EngineError):
    """Malformed input document or literal."""


class PreconditionError(EngineError):
    """Input violates a documented precondition (singular pencil, non-definite
    form, non-square matrix, out-of-range index, cost guard, ...)."""


class PathUnavailableError(EngineError):
    """The requested arithmetic path cannot serve this input, e.g. exact-only
    computation on a pencil with irrational characteristic roots."""


class InternalError(EngineError):
    """A mathematical invariant failed; indicates a bug, not bad input."""
