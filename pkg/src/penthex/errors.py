"""Exception hierarchy shared by all modules."""


class PentHexError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PentHexError, ValueError):
    pass


class EmptyCode(ParseError):
    pass


class BadDigit(ParseError):
    pass


class NotApplicable(PentHexError):
    pass


class OverlappingBlocks(NotApplicable):
    pass


class BadBend(PentHexError, ValueError):
    pass


class InconsistentRotation(PentHexError):
    pass


class InvalidPatch(PentHexError):
    pass


class NotTwoConnected(InvalidPatch):
    pass


class BadFaceLength(InvalidPatch):
    def __init__(self, face):
        super().__init__(f"inner face of length {len(face)}: {list(face)}")
        self.face = tuple(face)


class BadDegree(InvalidPatch):
    def __init__(self, vertex, degree):
        super().__init__(f"vertex {vertex} has degree {degree}")
        self.vertex = vertex
        self.degree = degree


class NotFiveFace(PentHexError):
    pass


class NotOneBend(PentHexError):
    pass


class PathNotIncident(PentHexError):
    pass


class AnchorMismatch(PentHexError):
    pass


class Inconsistent(PentHexError, ValueError):
    pass


class Unsupported(PentHexError):
    pass
