"""Exception hierarchy shared by all warcflow modules."""


class WarcError(Exception):
    """Base class. ``offset`` is a byte offset in the underlying file when known."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnknownAlgorithm(WarcError, ValueError):
    pass


class MalformedDigest(WarcError, ValueError):
    pass


class CorruptMember(WarcError):
    """A compressed member failed framing or checksum validation."""


class UnsupportedForCodec(WarcError):
    pass


class MalformedRecord(WarcError):
    pass


class MalformedVersionLine(MalformedRecord):
    pass


class MalformedHeaderLine(MalformedRecord):
    pass


class StaleRecord(WarcError):
    """The iterator has moved past the record whose payload is being read."""


class LengthMismatch(WarcError):
    pass


class HttpError(WarcError):
    pass


class MalformedStartLine(HttpError):
    pass


class HeaderSectionTooLarge(HttpError):
    pass


class IncompleteHeaderSection(HttpError):
    pass
