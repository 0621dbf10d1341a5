"""WARC domain model: header maps, record types, digests and record geometry."""

from __future__ import annotations

import base64
import binascii
import enum
import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from .errors import MalformedDigest, UnknownAlgorithm

BytesLike = Union[bytes, str]


def _b(value: BytesLike) -> bytes:
    if isinstance(value, str):
        return value.encode("latin-1")
    return bytes(value)


class WarcHeaderMap:
    """Ordered, case-insensitive multimap of header names to values.

    Names and values are kept as the raw bytes found on the wire. Lookups
    ignore case and return the first occurrence; iteration yields every
    entry in insertion order with the original casing.
    """

    __slots__ = ("_entries", "_index")

    def __init__(self, entries: Iterable = ()):
        self._entries = []
        self._index = None
        for name, value in entries:
            self.append(name, value)

    @classmethod
    def _trusted(cls, entries: list) -> "WarcHeaderMap":
        # entries come from the line parser, already split on CRLF and colon
        obj = cls.__new__(cls)
        obj._entries = entries
        obj._index = None
        return obj

    def _lookup(self) -> dict:
        if self._index is None:
            index = {}
            for i, (name, _) in enumerate(self._entries):
                index.setdefault(name.lower(), i)
            self._index = index
        return self._index

    def get(self, name: BytesLike, default=None) -> Optional[bytes]:
        i = self._lookup().get(_b(name).lower())
        if i is None:
            return default
        return self._entries[i][1]

    def get_all(self, name: BytesLike) -> list:
        key = _b(name).lower()
        return [v for n, v in self._entries if n.lower() == key]

    def __getitem__(self, name: BytesLike) -> bytes:
        value = self.get(name)
        if value is None:
            raise KeyError(name)
        return value

    def __contains__(self, name) -> bool:
        return _b(name).lower() in self._lookup()

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._entries)

    def items(self) -> list:
        return list(self._entries)

    def append(self, name: BytesLike, value: BytesLike) -> None:
        name, value = _b(name), _b(value)
        if not name or any(c in name for c in b"\r\n:"):
            raise ValueError(f"invalid header name {name!r}")
        if b"\r" in value or b"\n" in value:
            raise ValueError(f"invalid header value {value!r}")
        self._entries.append((name, value))
        self._index = None

    def set(self, name: BytesLike, value: BytesLike) -> None:
        """Replace the first entry named ``name`` in place, dropping later duplicates.

        Appends a new entry if the name is not present.
        """
        key = _b(name).lower()
        first = self._lookup().get(key)
        if first is None:
            self.append(name, value)
            return
        value = _b(value)
        if b"\r" in value or b"\n" in value:
            raise ValueError(f"invalid header value {value!r}")
        orig_name = self._entries[first][0]
        self._entries = [
            e for i, e in enumerate(self._entries) if i <= first or e[0].lower() != key
        ]
        self._entries[first] = (orig_name, value)
        self._index = None

    def remove(self, name: BytesLike) -> None:
        key = _b(name).lower()
        self._entries = [e for e in self._entries if e[0].lower() != key]
        self._index = None

    def copy(self) -> "WarcHeaderMap":
        return WarcHeaderMap._trusted(list(self._entries))

    def to_bytes(self) -> bytes:
        return b"".join([n + b": " + v + b"\r\n" for n, v in self._entries])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WarcHeaderMap):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return f"WarcHeaderMap({self._entries!r})"


def header_get(headers: WarcHeaderMap, name: BytesLike) -> Optional[bytes]:
    return headers.get(name)


class RecordType(enum.Enum):
    warcinfo = "warcinfo"
    response = "response"
    resource = "resource"
    request = "request"
    metadata = "metadata"
    revisit = "revisit"
    conversion = "conversion"
    continuation = "continuation"
    unknown = "unknown"

    @property
    def bit(self) -> int:
        return _TYPE_BITS[self]


_TYPE_BITS = {t: 1 << i for i, t in enumerate(RecordType)}
_TYPE_BY_NAME = {t.value.encode(): t for t in RecordType if t is not RecordType.unknown}


def record_type_of(headers: WarcHeaderMap) -> RecordType:
    value = headers.get(b"WARC-Type")
    if value is None:
        return RecordType.unknown
    t = _TYPE_BY_NAME.get(value)
    if t is None:
        t = _TYPE_BY_NAME.get(value.strip().lower(), RecordType.unknown)
    return t


@dataclass(frozen=True)
class RecordTypeMask:
    bits: int = 0

    FULL_BITS = (1 << len(RecordType)) - 1

    @classmethod
    def full(cls) -> "RecordTypeMask":
        return cls(cls.FULL_BITS)

    @classmethod
    def empty(cls) -> "RecordTypeMask":
        return cls(0)

    @classmethod
    def of(cls, *types: RecordType) -> "RecordTypeMask":
        bits = 0
        for t in types:
            bits |= t.bit
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> "RecordTypeMask":
        """Build a mask from a comma-separated list of type names ("any" = all)."""
        names = [p.strip().lower() for p in text.split(",") if p.strip()]
        if not names:
            raise ValueError("empty record type list")
        if "any" in names or "all" in names:
            return cls.full()
        try:
            return cls.of(*(RecordType(n) for n in names))
        except ValueError:
            raise ValueError(f"unknown record type in {text!r}") from None

    def matches(self, t: RecordType) -> bool:
        return bool(self.bits & _TYPE_BITS[t])

    __contains__ = matches

    def __or__(self, other: "RecordTypeMask") -> "RecordTypeMask":
        return RecordTypeMask(self.bits | other.bits)

    def __iter__(self):
        return (t for t in RecordType if self.matches(t))


# name -> (constructor, digest size)
ALGORITHMS = {
    "md5": (hashlib.md5, 16),
    "sha1": (hashlib.sha1, 20),
    "sha256": (hashlib.sha256, 32),
}
_ALIASES = {"sha-1": "sha1", "sha-256": "sha256"}


@dataclass(frozen=True)
class Digest:
    algorithm: str
    value: bytes

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise UnknownAlgorithm(f"unsupported digest algorithm {self.algorithm!r}")
        if len(self.value) != ALGORITHMS[self.algorithm][1]:
            raise MalformedDigest(
                f"{self.algorithm} digest must be {ALGORITHMS[self.algorithm][1]} bytes"
            )

    @classmethod
    def of(cls, data, algorithm: str = "sha1") -> "Digest":
        return cls(algorithm, ALGORITHMS[algorithm][0](data).digest())

    @property
    def canonical(self) -> str:
        b32 = base64.b32encode(self.value).decode("ascii").rstrip("=")
        return f"{self.algorithm}:{b32}"

    def to_header(self) -> bytes:
        return self.canonical.encode("ascii")

    def hex(self) -> str:
        return self.value.hex()

    def __str__(self) -> str:
        return self.canonical


def parse_digest(text: BytesLike) -> Digest:
    """Parse ``<alg>:<encoded>`` with base32 (unpadded, any case) or hex encoding."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("latin-1")
    alg, sep, encoded = text.strip().partition(":")
    if not sep:
        raise MalformedDigest(f"missing algorithm prefix in {text!r}")
    alg = alg.strip().lower()
    alg = _ALIASES.get(alg, alg)
    if alg not in ALGORITHMS:
        raise UnknownAlgorithm(f"unsupported digest algorithm {alg!r}")
    size = ALGORITHMS[alg][1]
    encoded = encoded.strip()
    try:
        if len(encoded) == 2 * size:
            value = bytes.fromhex(encoded)
        else:
            padded = encoded.upper() + "=" * (-len(encoded) % 8)
            value = base64.b32decode(padded)
    except (ValueError, binascii.Error):
        raise MalformedDigest(f"cannot decode digest {text!r}") from None
    if len(value) != size:
        raise MalformedDigest(f"{alg} digest has {len(value)} bytes, expected {size}")
    return Digest(alg, value)


class DigestStatus(enum.Enum):
    passed = "pass"
    failed = "fail"
    absent = "absent"


class DigestReport(NamedTuple):
    block: DigestStatus
    payload: DigestStatus


@dataclass
class RecordGeometry:
    """Where a record lives in its file.

    ``file_offset`` is the start of the record's compressed member (or of the
    raw record for uncompressed files). ``compressed_length`` is the on-disk
    extent; a reader fills it in once the record has been fully passed, so it
    is ``None`` while the record is still current.
    """

    file_offset: int
    content_length: int
    header_length: int
    compressed_length: Optional[int] = None


class WarcRecord:
    """One WARC record: parsed headers, geometry and a bounded payload stream.

    The payload of a record produced by an iterator can only be read while
    that record is the iterator's current one, unless it has been
    materialized (see :meth:`materialize`).
    """

    __slots__ = (
        "version", "headers", "record_type", "record_id", "geometry",
        "payload", "http", "digest_status", "legacy_version",
    )

    def __init__(self, version, headers, record_type, geometry, payload, legacy_version=False):
        self.version = version
        self.headers = headers
        self.record_type = record_type
        self.record_id = headers.get(b"WARC-Record-ID")
        self.geometry = geometry
        self.payload = payload
        self.http = None
        self.digest_status = None
        self.legacy_version = legacy_version

    @property
    def content_length(self) -> int:
        return self.geometry.content_length

    @property
    def content_type(self) -> Optional[bytes]:
        return self.headers.get(b"Content-Type")

    def read(self, n: int = -1) -> bytes:
        return self.payload.read(n)

    def materialize(self) -> bytes:
        """Read the rest of the payload into memory; the record stays readable afterwards."""
        from .parser import BufferedPayload

        if isinstance(self.payload, BufferedPayload):
            return self.payload.getvalue()
        data = self.payload.read()
        self.payload = BufferedPayload(data)
        return data

    def header_block(self) -> bytes:
        return b"WARC/" + self.version.encode() + b"\r\n" + self.headers.to_bytes() + b"\r\n"

    def verify_digests(self) -> DigestReport:
        from .parser import verify_digests

        return verify_digests(self)

    def __repr__(self) -> str:
        return (
            f"<WarcRecord {self.record_type.value} id={self.record_id!r} "
            f"offset={self.geometry.file_offset} length={self.content_length}>"
        )
