"""Streaming WARC record iteration.

Records that do not pass the type filter or length bounds are skipped after
reading only their header block: uncompressed input is seeked over, gzip
members are decompressed and discarded, and LZ4 frames that hold exactly
one record are hopped block by block without decoding.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

from ._fields import parse_fields
from .codec import AUTO, CodecKind, DecompressingStream, open_read, seek_member
from .errors import (
    CorruptMember,
    HttpError,
    IncompleteHeaderSection,
    MalformedDigest,
    MalformedHeaderLine,
    MalformedRecord,
    MalformedVersionLine,
    StaleRecord,
    UnknownAlgorithm,
)
from .http import HEADER_SECTION_CAP, find_header_end, is_http_content_type, parse_http_message
from .model import (
    ALGORITHMS,
    DigestReport,
    DigestStatus,
    RecordGeometry,
    RecordType,
    RecordTypeMask,
    WarcHeaderMap,
    WarcRecord,
    parse_digest,
    record_type_of,
)

log = logging.getLogger(__name__)

HEADER_BLOCK_CAP = 1 << 20
RESYNC_WINDOW = 1 << 20
TRAILER = b"\r\n\r\n"
_LEGACY_VERSION = re.compile(rb"\d+\.\d+")
_VERSION_LINE = re.compile(rb"WARC/\d+\.\d+\r?\n")
# mandatory fields that may appear at most once per record
_UNIQUE_FIELDS = (b"content-length", b"warc-type", b"warc-record-id", b"warc-date")


@dataclass(frozen=True)
class IterationOptions:
    filter: RecordTypeMask = field(default_factory=RecordTypeMask.full)
    parse_http: bool = False
    verify_digests: bool = False
    min_content_length: Optional[int] = None
    max_content_length: Optional[int] = None
    strict: bool = False


@dataclass
class IterationStats:
    records: int = 0
    skipped: int = 0
    skipped_bytes: int = 0
    payload_bytes: int = 0
    malformed: int = 0
    resyncs: int = 0
    trailer_errors: int = 0
    http_errors: int = 0
    legacy_versions: int = 0
    garbage_bytes: int = 0


class HeaderBlock(NamedTuple):
    version: str
    headers: WarcHeaderMap
    length: int


def _parse_header_block(data: bytes, strict: bool, base_offset: int):
    nl = data.find(b"\n")
    if nl < 0:
        raise MalformedVersionLine("no WARC version line", base_offset)
    line = data[:nl]
    if line.endswith(b"\r"):
        line = line[:-1]
    elif strict:
        raise MalformedVersionLine("version line must end with CRLF", base_offset)
    if not line.startswith(b"WARC/"):
        raise MalformedVersionLine(f"not a WARC version line: {line[:40]!r}", base_offset)
    legacy = False
    v = line[5:]
    if v == b"1.1" or v == b"1.0":
        version = v.decode()
    elif not strict and _LEGACY_VERSION.fullmatch(v):
        version = "1.0"
        legacy = True
    else:
        raise MalformedVersionLine(f"unsupported WARC version {v[:20]!r}", base_offset)

    rest = data[nl + 1 : nl + 3]
    if rest == b"\r\n":
        return version, WarcHeaderMap._trusted([]), nl + 3, legacy
    if not strict and rest[:1] == b"\n":
        return version, WarcHeaderMap._trusted([]), nl + 2, legacy
    end = find_header_end(data, strict)
    if end < 0:
        raise MalformedRecord("unterminated WARC header block", base_offset)
    entries, _ = parse_fields(data[nl + 1 : end], strict, base_offset + nl + 1)
    if strict:
        names = [n.lower() for n, _ in entries]
        for key in _UNIQUE_FIELDS:
            if names.count(key) > 1:
                raise MalformedHeaderLine(f"repeated {key.decode()} field", base_offset)
    return version, WarcHeaderMap._trusted(entries), end, legacy


def parse_header_block(data: bytes, strict: bool = False, base_offset: int = 0) -> HeaderBlock:
    """Parse a version line and header fields up to the terminating blank line.

    Returns the version, the headers and the number of bytes consumed.
    Legacy versions such as ``WARC/0.18`` are read as 1.0 unless ``strict``.
    """
    version, headers, length, legacy = _parse_header_block(data, strict, base_offset)
    if legacy:
        log.warning("legacy WARC version line at offset %d read as WARC/1.0", base_offset)
    return HeaderBlock(version, headers, length)


class PayloadReader:
    """Bounded reader over the current record's content block."""

    __slots__ = ("_it", "_gen", "_remaining", "length")

    def __init__(self, iterator, length):
        self._it = iterator
        self._gen = iterator._gen
        self._remaining = length
        self.length = length

    @property
    def remaining(self) -> int:
        return self._remaining

    def read(self, n: int = -1) -> bytes:
        it = self._it
        if it._gen != self._gen:
            raise StaleRecord("iterator has advanced past this record")
        if n is None or n < 0 or n > self._remaining:
            n = self._remaining
        if n == 0:
            return b""
        data = it._stream.read(n)
        self._remaining -= len(data)
        it.stats.payload_bytes += len(data)
        if len(data) < n:
            self._remaining = 0
            it._truncated()
        return data

    def readinto(self, b) -> int:
        data = self.read(len(b))
        b[: len(data)] = data
        return len(data)

    def readable(self) -> bool:
        return True


class BufferedPayload:
    """In-memory payload; independent of any iterator."""

    __slots__ = ("_data", "_pos", "length")

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self.length = len(data)

    @property
    def remaining(self) -> int:
        return len(self._data) - self._pos

    def read(self, n: int = -1) -> bytes:
        if n is None or n < 0:
            n = len(self._data) - self._pos
        data = self._data[self._pos : self._pos + n]
        self._pos += len(data)
        return data

    def readinto(self, b) -> int:
        data = self.read(len(b))
        b[: len(data)] = data
        return len(data)

    def readable(self) -> bool:
        return True

    def getvalue(self) -> bytes:
        return self._data


class _Current:
    __slots__ = ("record", "payload_start", "content_length", "member", "start", "at_member_start", "geometry")

    def __init__(self, record, payload_start, content_length, member, start, at_member_start, geometry):
        self.record = record
        self.payload_start = payload_start
        self.content_length = content_length
        self.member = member
        self.start = start
        self.at_member_start = at_member_start
        self.geometry = geometry


_SKIPPED = object()


class ArchiveIterator:
    """Iterate over the records of a WARC file.

    ``source`` is a binary file object (or an already opened
    :class:`DecompressingStream`). Options may be given as an
    :class:`IterationOptions` or as keyword arguments.
    """

    def __init__(self, source, kind=AUTO, options: Optional[IterationOptions] = None, **kw):
        if isinstance(source, DecompressingStream):
            self._stream = source
        else:
            self._stream = open_read(source, kind)
        if options is None:
            options = IterationOptions(**kw)
        elif kw:
            options = replace(options, **kw)
        self.options = options
        self.stats = IterationStats()
        self._gen = 0
        self._cur: Optional[_Current] = None
        self._single = False

    @property
    def kind(self) -> CodecKind:
        return self._stream.kind

    @property
    def stream(self) -> DecompressingStream:
        return self._stream

    def __iter__(self):
        return self

    def __next__(self) -> WarcRecord:
        rec = self.next_record()
        if rec is None:
            raise StopIteration
        return rec

    def next_record(self) -> Optional[WarcRecord]:
        strict = self.options.strict
        while True:
            try:
                self._finish_current()
                rec = self._read_one()
            except (CorruptMember, MalformedRecord) as e:
                if strict or self._single:
                    raise
                self.recover(e)
                continue
            if rec is _SKIPPED:
                continue
            return rec

    # -- internals -----------------------------------------------------------

    def _truncated(self) -> None:
        offset = self._cur.geometry.file_offset if self._cur else None
        if self.options.strict:
            raise MalformedRecord("record truncated before end of content block", offset)
        self.stats.malformed += 1

    def _skip(self, n: int) -> None:
        got = self._stream.skip(n)
        if got < n:
            self._truncated()

    def _finish_current(self) -> None:
        cur = self._cur
        if cur is None:
            return
        self._cur = None
        self._gen += 1
        st = self._stream
        end = cur.payload_start + cur.content_length
        remaining = end - st.tell()
        m = cur.member
        if (
            remaining > 0
            and st.kind is CodecKind.lz4
            and cur.at_member_start
            and m is not None
            and not m.ended
            and m.content_size == end + 4 - cur.start
        ):
            st.skip_member()
        else:
            if remaining > 0:
                self._skip(remaining)
            tail = st.peek(4)
            if tail == TRAILER:
                st.skip(4)
            else:
                if self.options.strict:
                    raise MalformedRecord("missing record trailer", cur.geometry.file_offset)
                self.stats.trailer_errors += 1
                n = 0
                while n < len(tail) and tail[n] in b"\r\n":
                    n += 1
                st.skip(n)
        geo = cur.geometry
        if st.kind is CodecKind.none:
            geo.compressed_length = st.tell() - cur.start
        elif m is not None:
            if not m.ended:
                st._fill(1)
            if m.ended:
                geo.compressed_length = m.compressed

    def _read_one(self):
        st = self._stream
        opts = self.options
        strict = opts.strict
        if not st._fill(1):
            return None
        start = st.tell()
        if st.kind is CodecKind.none:
            st.mark_record_start()
        m = st.member_at()
        offset = m.offset

        if st.peek(5) != b"WARC/":
            raise MalformedVersionLine("record does not start with a WARC version line", offset)
        end = st.find(b"\r\n\r\n", HEADER_BLOCK_CAP)
        if end >= 0:
            end += 4
            if not strict:
                buf = st._buf
                j = buf.find(b"\n\n", st._pos, st._pos + end)
                if j >= 0:
                    end = j - st._pos + 2
        elif not strict:
            end = st.find(b"\n\n", HEADER_BLOCK_CAP)
            if end >= 0:
                end += 2
        if end < 0:
            raise MalformedRecord("no end of WARC header block found", offset)
        block = st.read(end)
        version, headers, hlen, legacy = _parse_header_block(block, strict, offset)
        if legacy:
            self.stats.legacy_versions += 1

        raw_len = headers.get(b"Content-Length")
        try:
            clen = int(raw_len)
            if clen < 0:
                raise ValueError
        except (TypeError, ValueError):
            raise MalformedRecord(f"missing or invalid Content-Length {raw_len!r}", offset) from None

        rtype = record_type_of(headers)
        geometry = RecordGeometry(offset, clen, hlen)
        cur = _Current(None, st.tell(), clen, m, start, m.start == start, geometry)
        self._cur = cur
        if (
            not opts.filter.matches(rtype)
            or (opts.min_content_length is not None and clen < opts.min_content_length)
            or (opts.max_content_length is not None and clen > opts.max_content_length)
        ):
            self.stats.skipped += 1
            self.stats.skipped_bytes += clen
            return _SKIPPED

        rec = WarcRecord(version, headers, rtype, geometry, PayloadReader(self, clen), legacy)
        cur.record = rec
        self.stats.records += 1
        if opts.parse_http and is_http_content_type(headers.get(b"Content-Type")):
            self._parse_http(rec, clen)
        if opts.verify_digests:
            verify_digests(rec)
        return rec

    def _parse_http(self, rec: WarcRecord, clen: int) -> None:
        st = self._stream
        cap = min(clen, HEADER_SECTION_CAP)
        n = min(cap, 4096)
        while True:
            prefix = st.peek(n)
            try:
                rec.http = parse_http_message(prefix, clen, self.options.strict)
                return
            except IncompleteHeaderSection:
                if n >= cap or len(prefix) < n:
                    break
                n = min(cap, n * 4)
            except HttpError:
                if self.options.strict:
                    raise
                break
            except MalformedHeaderLine:
                if self.options.strict:
                    raise
                break
        self.stats.http_errors += 1

    def recover(self, err: Exception) -> None:
        """Skip to the next plausible record start after ``err`` (non-strict reading)."""
        self.stats.malformed += 1
        self.stats.resyncs += 1
        self._cur = None
        self._gen += 1
        st = self._stream
        log.debug("resyncing after %s", err)
        if st.kind is CodecKind.none:
            self._scan_raw()
        else:
            after = getattr(err, "offset", None)
            if after is None:
                m = st.member_at()
                after = m.offset if m is not None else st._src.offset
            before = st.garbage_bytes
            st.resync(after)
            self.stats.garbage_bytes += st.garbage_bytes - before

    def _scan_raw(self) -> None:
        st = self._stream
        skipped = st.skip(1)
        while True:
            i = st.find(b"WARC/", RESYNC_WINDOW)
            if i < 0:
                if st.exhausted or not st._fill(RESYNC_WINDOW):
                    skipped += st.skip(len(st._buf) - st._pos)
                    self.stats.garbage_bytes += skipped
                    return
                raise MalformedRecord("no record start within resync window", st._raw_base + st.tell())
            skipped += st.skip(i)
            if _VERSION_LINE.match(st.peek(16)):
                self.stats.garbage_bytes += skipped
                return
            skipped += st.skip(5)


def verify_digests(record: WarcRecord) -> DigestReport:
    """Check WARC-Block-Digest and WARC-Payload-Digest against the content.

    Consumes the payload through hashing and keeps it in memory so the
    record stays readable. Payload digests cover the HTTP body for
    ``application/http`` records and the whole block otherwise; they are
    not checked for revisit records, which carry the digest of another
    record's payload.
    """
    if record.digest_status is not None:
        return record.digest_status
    headers = record.headers
    block_hdr = headers.get(b"WARC-Block-Digest")
    payload_hdr = headers.get(b"WARC-Payload-Digest")
    if record.record_type is RecordType.revisit:
        payload_hdr = None
    if block_hdr is None and payload_hdr is None:
        report = DigestReport(DigestStatus.absent, DigestStatus.absent)
        record.digest_status = report
        return report

    data = record.materialize()
    block = _check(block_hdr, data)
    payload = DigestStatus.absent
    if payload_hdr is not None:
        body = 0
        if record.http is not None:
            body = record.http.body_offset
        elif is_http_content_type(record.content_type):
            try:
                body = parse_http_message(data[:HEADER_SECTION_CAP], len(data)).body_offset
            except (HttpError, MalformedRecord):
                body = 0
        payload = _check(payload_hdr, memoryview(data)[body:])
    report = DigestReport(block, payload)
    record.digest_status = report
    return report


def _check(header: Optional[bytes], data) -> DigestStatus:
    if header is None:
        return DigestStatus.absent
    try:
        expected = parse_digest(header)
    except (UnknownAlgorithm, MalformedDigest):
        return DigestStatus.failed
    actual = ALGORITHMS[expected.algorithm][0](data).digest()
    return DigestStatus.passed if actual == expected.value else DigestStatus.failed


def next_record(iterator: ArchiveIterator) -> Optional[WarcRecord]:
    return iterator.next_record()


def read_payload(record: WarcRecord, n: int) -> bytes:
    return record.payload.read(n)


def open_record_at(file, offset: int, kind=AUTO, options: Optional[IterationOptions] = None) -> WarcRecord:
    """Read the single record starting at ``offset`` without touching earlier data."""
    stream = seek_member(file, offset, kind)
    opts = replace(options or IterationOptions(), filter=RecordTypeMask.full(),
                   min_content_length=None, max_content_length=None)
    it = ArchiveIterator(stream, options=opts)
    it._single = True
    rec = it.next_record()
    if rec is None:
        raise MalformedRecord("no record at offset", offset)
    return rec


def iterate(source, kind=AUTO, **kw) -> ArchiveIterator:
    return ArchiveIterator(source, kind, **kw)
