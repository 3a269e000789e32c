"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name) so the CLI
can print it verbatim. ``UsageError`` subclasses cover malformed input;
``DomainError`` subclasses are well-formed requests the engines cannot satisfy.
"""


class RevSynthError(Exception):
    @property
    def code(self) -> str:
        return type(self).__name__


class UsageError(RevSynthError, ValueError):
    pass


class DomainError(RevSynthError):
    pass


class DegreeMismatch(UsageError):
    pass


class MalformedCycle(UsageError):
    pass


class PointOutOfRange(UsageError):
    pass


class RepeatedPoint(UsageError):
    pass


class MalformedImages(UsageError):
    pass


class RankOutOfRange(UsageError):
    pass


class DegreeTooLargeForRanking(UsageError):
    pass


class InvalidGate(UsageError):
    pass


class MalformedLabel(UsageError):
    pass


class UnknownLibrary(UsageError):
    pass


class UnsupportedWidth(DomainError):
    pass


class CapExceeded(DomainError):
    pass


class LibraryTooLarge(DomainError):
    pass


class NotInGeneratedGroup(DomainError):
    pass


class DepthExceeded(DomainError):
    pass
