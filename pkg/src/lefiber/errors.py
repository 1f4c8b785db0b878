"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI can emit
structured error objects and map failures to exit codes without string
matching.
"""

from __future__ import annotations


class LefiberError(Exception):
    """Base class for all package errors."""

    code = "ERROR"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


class ParseError(LefiberError):
    """Raised on malformed polynomial text. Carries 1-based line and column."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col

    def payload(self) -> dict:
        d = super().payload()
        d["line"] = self.line
        d["col"] = self.col
        return d


class RingError(LefiberError):
    """Bad ring data: unknown variable, duplicate names, arity mismatch."""

    code = "RING_ERROR"


class InputError(LefiberError):
    """A precondition on the mathematical input failed (f = 0, f(0) != 0, ...)."""

    code = "INPUT_ERROR"


class SingularMatrixError(LefiberError):
    code = "SINGULAR_MATRIX"


class ResourceLimitError(LefiberError):
    """Reduction-step budget exhausted. Distinct from any mathematical failure."""

    code = "RESOURCE_LIMIT"

    def __init__(self, message: str, steps: int | None = None):
        super().__init__(message)
        self.steps = steps


class NonIsolatedSliceError(LefiberError):
    """The restricted function has a non-isolated critical point at the origin."""

    code = "NON_ISOLATED_SLICE"


class ImproperIntersectionError(LefiberError):
    """A cycle meets the chosen linear subspace in positive dimension at 0."""

    code = "IMPROPER_INTERSECTION"


class NegativeLeNumberError(LefiberError):
    code = "NEGATIVE_LE_NUMBER"


class ConsistencyFailureError(LefiberError):
    """Two independent routes to the same invariant disagreed."""

    code = "CONSISTENCY_FAILURE"


class GenericityFailureError(LefiberError):
    """Random sampling failed to produce agreeing generic data within budget."""

    code = "GENERICITY_FAILURE"


class CorpusError(LefiberError):
    code = "CORPUS_ERROR"
