"""Exception hierarchy shared by every module of the package."""


class QuiverHHError(Exception):
    """Base class for all errors raised by quiverhh."""


class FieldMismatchError(QuiverHHError, TypeError):
    """Scalars from two different fields were combined."""


class PresentationError(QuiverHHError, ValueError):
    """Problem with a textual bound-quiver presentation."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class PresentationSyntaxError(PresentationError):
    """Malformed DSL input."""


class PresentationSemanticError(PresentationError):
    """Well-formed DSL input that does not describe a valid bound quiver."""


class NotFiniteDimensional(QuiverHHError):
    """No finiteness certificate was found up to the degree bound."""

    def __init__(self, message, live_paths=()):
        self.live_paths = list(live_paths)
        super().__init__(message)


class DegreeOverflow(QuiverHHError):
    """A normal form was requested beyond the degree the basis is valid for."""


class OracleMismatch(QuiverHHError):
    """Two independent computations of the same quantity disagree."""


class NotACycle(QuiverHHError, ValueError):
    """A path that is not an oriented cycle was used where one is required."""


class InvariantViolation(QuiverHHError):
    """A structural invariant failed; signals a bug or an unsupported input."""


class CertificateShapeError(QuiverHHError):
    """A reduction certificate could not be written over the requested generators."""


class NotTriangular(QuiverHHError, ValueError):
    """A presentation used as a tilted core has an oriented cycle of old arrows."""

    def __init__(self, message, cycle=None):
        self.cycle = cycle
        super().__init__(message)
