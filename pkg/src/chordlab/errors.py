"""Exception hierarchy shared by every chordlab module."""


class ChordlabError(Exception):
    """Base class for all chordlab errors."""


class UsageError(ChordlabError, ValueError):
    pass


class DivisionError(ChordlabError, ZeroDivisionError):
    pass


class CompositionError(ChordlabError, ValueError):
    pass


class DomainError(ChordlabError, ValueError):
    pass


class OrderError(ChordlabError, ValueError):
    pass


class ParseError(ChordlabError, ValueError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


class EmptyDiagramError(ChordlabError, ValueError):
    pass


class NotRootComponentError(ChordlabError, ValueError):
    pass


class StructureError(ChordlabError, AssertionError):
    """Internal invariant broken while decomposing a diagram."""


class LabelError(ChordlabError, ValueError):
    pass


class MalformedTreeError(ChordlabError, ValueError):
    pass
