"""Write WARC records, one compressed member per record, and transcode files."""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

from .codec import AUTO, CodecKind, MemberEncoder
from .errors import CorruptMember, HttpError, LengthMismatch, MalformedRecord
from .http import HEADER_SECTION_CAP, is_http_content_type, parse_http_message
from .model import ALGORITHMS, Digest, RecordGeometry, WarcHeaderMap, WarcRecord
from .parser import ArchiveIterator, IterationOptions

TRAILER = b"\r\n\r\n"
_COPY_CHUNK = 1 << 16


@dataclass(frozen=True)
class WriteOptions:
    codec: CodecKind = CodecKind.gzip
    level: Optional[int] = None
    compute_digests: bool = False
    digest_algorithm: str = "sha1"

    def __post_init__(self):
        object.__setattr__(self, "codec", CodecKind(self.codec))
        if self.digest_algorithm not in ALGORITHMS:
            raise ValueError(f"unsupported digest algorithm {self.digest_algorithm!r}")
        if self.level is not None and self.codec is CodecKind.gzip and not -1 <= self.level <= 9:
            raise ValueError("gzip level must be within -1..9")
        if self.level is not None and self.codec is CodecKind.lz4 and not 0 <= self.level <= 16:
            raise ValueError("lz4 level must be within 0..16")


def _http_body_offset(data) -> int:
    try:
        return parse_http_message(bytes(data[:HEADER_SECTION_CAP]), len(data)).body_offset
    except (HttpError, MalformedRecord):
        return 0


class WarcWriter:
    """Serialize records to ``sink``; each record becomes exactly one member."""

    def __init__(self, sink, options: Optional[WriteOptions] = None, **kw):
        self.sink = sink
        self.options = options or WriteOptions(**kw)
        try:
            self.offset = sink.tell()
        except (AttributeError, OSError, io.UnsupportedOperation):
            self.offset = 0
        self.records = 0

    def write(self, record: WarcRecord) -> RecordGeometry:
        return self.write_record(record.headers, record.payload, record.content_length, record.version)

    def write_record(self, headers, payload=b"", length: Optional[int] = None,
                     version: Optional[str] = None) -> RecordGeometry:
        opts = self.options
        if not isinstance(headers, WarcHeaderMap):
            headers = WarcHeaderMap(headers)
        headers = headers.copy()

        if isinstance(payload, (bytes, bytearray, memoryview)):
            data = payload
            if length is None:
                length = len(data)
            if len(data) != length:
                raise LengthMismatch(f"payload has {len(data)} bytes, declared {length}")
            chunks = None
        else:
            if length is None:
                raise ValueError("length is required for stream payloads")
            data = None
            chunks = payload
        headers.set(b"Content-Length", str(length).encode())

        if opts.compute_digests:
            if data is None:
                data = self._drain(chunks, length)
                chunks = None
            alg = opts.digest_algorithm
            if b"WARC-Block-Digest" not in headers:
                headers.append(b"WARC-Block-Digest", Digest.of(data, alg).to_header())
            if b"WARC-Payload-Digest" not in headers and is_http_content_type(headers.get(b"Content-Type")):
                body = memoryview(data)[_http_body_offset(data):]
                headers.append(b"WARC-Payload-Digest", Digest.of(body, alg).to_header())

        head = b"WARC/" + (version or "1.1").encode() + b"\r\n" + headers.to_bytes() + b"\r\n"
        enc = MemberEncoder(opts.codec, opts.level, content_size=len(head) + length + len(TRAILER))
        enc.write(head)
        if data is not None:
            enc.write(data)
        else:
            written = 0
            while written < length:
                chunk = chunks.read(min(_COPY_CHUNK, length - written))
                if not chunk:
                    break
                enc.write(chunk)
                written += len(chunk)
            if written != length or chunks.read(1):
                raise LengthMismatch(f"payload source does not match declared length {length}")
        enc.write(TRAILER)
        member = enc.finish()
        self.sink.write(member)
        geo = RecordGeometry(self.offset, length, len(head), len(member))
        self.offset += len(member)
        self.records += 1
        return geo

    @staticmethod
    def _drain(stream, length: int) -> bytes:
        parts = []
        got = 0
        while got < length:
            chunk = stream.read(min(_COPY_CHUNK, length - got))
            if not chunk:
                break
            parts.append(chunk)
            got += len(chunk)
        if got != length or stream.read(1):
            raise LengthMismatch(f"payload source does not match declared length {length}")
        return b"".join(parts)


def write_record(sink, headers, payload=b"", length=None, options: Optional[WriteOptions] = None,
                 version: Optional[str] = None) -> RecordGeometry:
    return WarcWriter(sink, options).write_record(headers, payload, length, version)


@dataclass(frozen=True)
class RecompressReport:
    records: int
    bytes_in: int
    bytes_out: int
    malformed: int = 0

    @property
    def overhead_ratio(self) -> float:
        return self.bytes_out / self.bytes_in if self.bytes_in else 0.0

    def summary(self) -> str:
        return (
            f"records={self.records} bytes_in={self.bytes_in} bytes_out={self.bytes_out} "
            f"overhead_ratio={self.overhead_ratio:.3f} malformed={self.malformed}"
        )


def recompress(input, output, target: Optional[WriteOptions] = None, *, source_kind=AUTO,
               strict: bool = False) -> RecompressReport:
    """Re-encode every record of ``input`` into ``output`` with ``target`` options.

    Header and payload bytes pass through unchanged apart from
    Content-Length, which is always rewritten from the payload size.
    """
    target = target or WriteOptions(codec=CodecKind.lz4)
    try:
        start = input.tell()
    except (AttributeError, OSError):
        start = 0
    it = ArchiveIterator(input, source_kind, IterationOptions(strict=strict))
    writer = WarcWriter(output, target)
    out_start = writer.offset
    failed = 0
    for rec in it:
        try:
            writer.write(rec)
        except (CorruptMember, MalformedRecord, LengthMismatch) as e:
            if strict:
                raise
            failed += 1
            if not isinstance(e, LengthMismatch):
                it.recover(e)
    input.seek(0, io.SEEK_END)
    bytes_in = input.tell() - start
    return RecompressReport(writer.records, bytes_in, writer.offset - out_start, it.stats.malformed + failed)
