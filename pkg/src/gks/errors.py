"""Domain error hierarchy.

Every error carries a stable machine-readable ``code`` (used verbatim by the
CLI and the HTTP service) and an optional ``detail`` dict with positional
context such as row numbers or byte offsets.
"""


class GksError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "GksError"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        if self.detail:
            ctx = ", ".join(f"{k}={v!r}" for k, v in sorted(self.detail.items()))
            return f"{self.message} ({ctx})"
        return self.message


# --- table ingestion ---------------------------------------------------


class DuplicateObject(GksError):
    code = "DuplicateObject"


class DuplicateAttribute(GksError):
    code = "DuplicateAttribute"


class MalformedRow(GksError):
    code = "MalformedRow"


class UnknownAttribute(GksError):
    code = "UnknownAttribute"


# --- formula language ---------------------------------------------------


class FormulaSyntaxError(GksError):
    """Parse failure; ``detail`` has the byte offset and the expected tokens."""

    code = "SyntaxError"


class UnsupportedRelation(GksError):
    code = "UnsupportedRelation"


class NotAtomic(GksError):
    code = "NotAtomic"


# --- granules and structures --------------------------------------------


class TableMismatch(GksError):
    code = "TableMismatch"


class EmptyDomain(GksError):
    code = "EmptyDomain"


class SharedNotSuper(GksError):
    code = "SharedNotSuper"


class RootMismatch(GksError):
    code = "RootMismatch"


class NotTwoLevel(GksError):
    code = "NotTwoLevel"


class NotFiner(GksError):
    code = "NotFiner"


class UnknownNode(GksError):
    code = "UnknownNode"


class AmbiguousLabel(GksError):
    code = "AmbiguousLabel"


# --- level navigation ----------------------------------------------------


class NotLeveled(GksError):
    code = "NotLeveled"


class MixedLevels(GksError):
    code = "MixedLevels"


class AtFinestLevel(GksError):
    code = "AtFinestLevel"


class AtCoarsestLevel(GksError):
    code = "AtCoarsestLevel"


class NotBipartite(GksError):
    code = "NotBipartite"


# --- serialization --------------------------------------------------------


class SchemaError(GksError):
    code = "SchemaError"


class InvariantViolation(GksError):
    code = "InvariantViolation"
