"""Streaming WARC reading, writing, verification and transcoding."""

from .codec import (
    AUTO,
    CodecKind,
    DecompressingStream,
    MemberBoundary,
    detect_codec,
    member_boundary,
    open_read,
    seek_member,
    skip_member,
    write_member,
)
from .errors import (
    CorruptMember,
    LengthMismatch,
    MalformedDigest,
    MalformedHeaderLine,
    MalformedRecord,
    MalformedStartLine,
    MalformedVersionLine,
    StaleRecord,
    UnknownAlgorithm,
    UnsupportedForCodec,
    WarcError,
)
from .http import HttpKind, HttpMessage, http_header_get, parse_http_message
from .model import (
    Digest,
    DigestReport,
    DigestStatus,
    RecordGeometry,
    RecordType,
    RecordTypeMask,
    WarcHeaderMap,
    WarcRecord,
    header_get,
    parse_digest,
    record_type_of,
)
from .parser import (
    ArchiveIterator,
    IterationOptions,
    next_record,
    open_record_at,
    parse_header_block,
    read_payload,
    verify_digests,
)
from .writer import RecompressReport, WarcWriter, WriteOptions, recompress, write_record

__version__ = "0.1.0"

__all__ = [
    "HttpKind",
    "HttpMessage",
    "http_header_get",
    "parse_http_message",
    "RecompressReport",
    "WarcWriter",
    "WriteOptions",
    "recompress",
    "write_record",
    "AUTO",
    "CodecKind",
    "DecompressingStream",
    "MemberBoundary",
    "detect_codec",
    "member_boundary",
    "open_read",
    "seek_member",
    "skip_member",
    "write_member",
    "CorruptMember",
    "LengthMismatch",
    "MalformedDigest",
    "MalformedHeaderLine",
    "MalformedRecord",
    "MalformedStartLine",
    "MalformedVersionLine",
    "StaleRecord",
    "UnknownAlgorithm",
    "UnsupportedForCodec",
    "WarcError",
    "Digest",
    "DigestReport",
    "DigestStatus",
    "RecordGeometry",
    "RecordType",
    "RecordTypeMask",
    "WarcHeaderMap",
    "WarcRecord",
    "header_get",
    "parse_digest",
    "record_type_of",
    "ArchiveIterator",
    "IterationOptions",
    "next_record",
    "open_record_at",
    "parse_header_block",
    "read_payload",
    "verify_digests",
]
