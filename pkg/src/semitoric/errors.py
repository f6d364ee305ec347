"""Exception hierarchy shared by every module of the package."""


class SemitoricError(Exception):
    """Base class for all errors raised by :mod:`semitoric`."""


class ConfigurationError(SemitoricError):
    """A group element is used with a line configuration it is not bound to."""


class RegionError(SemitoricError):
    """An x-interval straddles one of the vertical cut lines."""


class GeometryError(SemitoricError):
    """A polygon is degenerate, self-intersecting or not vertically convex."""


class BoundaryError(GeometryError):
    """A vertical line misses the polygon or sits at an extreme abscissa."""


class InvertibilityError(SemitoricError):
    """A series cannot be inverted (or substituted) with respect to Y."""


class ValidationError(SemitoricError):
    """An ingredient fails the admissibility conditions."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(SemitoricError):
    """An operation was called on data outside its domain."""


class ParseError(SemitoricError):
    """Base class for document errors."""


class DocumentSyntaxError(ParseError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(ParseError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class VersionError(ParseError):
    pass
