"""Exception hierarchy shared across the package."""


class TopofaceError(Exception):
    """Base class for all errors raised by topoface."""


class DegenerateContact(TopofaceError):
    """Two curves touch without crossing, overlap, or pass through a vertex."""


class NonSimplePolygon(TopofaceError):
    pass


class NonSimpleBoundary(TopofaceError):
    pass


class InvalidDrawing(TopofaceError):
    pass


class SizeMismatch(TopofaceError):
    pass


class SharedEndpoint(TopofaceError):
    pass


class BudgetExceeded(TopofaceError):
    pass


class UnboundedFace(TopofaceError):
    pass


class NotBiconnected(TopofaceError):
    pass


class NotPlane(TopofaceError):
    pass


class NotFound(TopofaceError):
    pass


class LemmaViolation(TopofaceError):
    """A search that a structural guarantee says must succeed came up empty.

    On a valid complete simple drawing this is unreachable, so it signals
    a malformed input rather than a bug in the search.
    """


class NoPlane4Cycle(TopofaceError):
    pass


class IterationCapExceeded(TopofaceError):
    pass


class NotMutable(TopofaceError):
    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class ParseError(TopofaceError):
    """Input file is not a well-formed drawing document."""
