"""Exception hierarchy shared by all beltlab modules."""


class BeltLabError(Exception):
    """Base class for every error raised by beltlab."""


class BadVertexError(BeltLabError, IndexError):
    pass


class FrozenVertexError(BeltLabError):
    pass


class ZeroValueError(BeltLabError, ZeroDivisionError):
    """A cluster variable that must be divided by is zero."""

    def __init__(self, message, vertex=None, time=None):
        super().__init__(message)
        self.vertex = vertex
        self.time = time


class NotBipartiteError(BeltLabError):
    pass


class BadRankError(BeltLabError, ValueError):
    pass


class AffineUnsupportedError(BeltLabError, ValueError):
    pass


class MissingMetadataError(BeltLabError):
    pass


class ColorClashError(BeltLabError):
    pass


class IndexOutOfWindowError(BeltLabError, IndexError):
    pass


class DegenerateInputError(BeltLabError, ValueError):
    pass


class TooLargeError(BeltLabError):
    pass


class DegenerateDataError(BeltLabError):
    """Annulus data produced a zero planted variable."""


class GenericityFailure(BeltLabError):
    pass


class InsufficientDataError(BeltLabError):
    pass
