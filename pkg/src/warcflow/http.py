"""Minimal HTTP/1.x message head parser for WARC record payloads.

Only the start line and header fields are parsed. Bodies are left as raw
bytes (no chunked or content decoding); their location is reported as an
offset into the payload.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ._fields import parse_fields
from .errors import HeaderSectionTooLarge, IncompleteHeaderSection, MalformedStartLine
from .model import WarcHeaderMap

HEADER_SECTION_CAP = 64 * 1024


class HttpKind(enum.Enum):
    request = "request"
    response = "response"


@dataclass
class HttpMessage:
    kind: HttpKind
    version: str  # "1.0", "1.1" or "other"
    headers: WarcHeaderMap
    body_offset: int
    body_length: int
    method: Optional[bytes] = None
    target: Optional[bytes] = None
    status_code: Optional[int] = None
    reason: Optional[bytes] = None
    skipped_lines: int = 0

    def header(self, name) -> Optional[bytes]:
        return self.headers.get(name)


def http_header_get(msg: HttpMessage, name) -> Optional[bytes]:
    return msg.headers.get(name)


def find_header_end(data: bytes, strict: bool = False) -> int:
    """Index one past the blank line ending the header section, or -1."""
    if strict:
        i = data.find(b"\r\n\r\n")
        return i + 4 if i >= 0 else -1
    ends = [i + k for i, k in ((data.find(b"\n\n"), 2), (data.find(b"\n\r\n"), 3)) if i >= 0]
    return min(ends) if ends else -1


def _version(token: bytes) -> str:
    if token == b"HTTP/1.1":
        return "1.1"
    if token == b"HTTP/1.0":
        return "1.0"
    return "other"


def _split_start(line: bytes, strict: bool, n: int) -> list:
    if strict:
        return line.split(b" ", n)
    return line.split(None, n)


def parse_http_message(payload_prefix: bytes, total_length: int, strict: bool = False) -> HttpMessage:
    """Parse the head of an HTTP request or response.

    ``payload_prefix`` must include the complete header section.
    :class:`IncompleteHeaderSection` signals that a longer prefix is needed.
    """
    end = find_header_end(payload_prefix, strict)
    if end < 0:
        if len(payload_prefix) >= HEADER_SECTION_CAP:
            raise HeaderSectionTooLarge(f"no end of HTTP header section within {HEADER_SECTION_CAP} bytes")
        if len(payload_prefix) >= total_length:
            raise MalformedStartLine("unterminated HTTP header section")
        raise IncompleteHeaderSection("need more data")
    if end > HEADER_SECTION_CAP:
        raise HeaderSectionTooLarge(f"HTTP header section exceeds {HEADER_SECTION_CAP} bytes")

    eol = payload_prefix.find(b"\n", 0, end)
    start_line = payload_prefix[:eol].rstrip(b"\r")
    if strict and not payload_prefix[:eol].endswith(b"\r"):
        raise MalformedStartLine("start line must end with CRLF")
    head = payload_prefix[eol + 1 : end]

    if start_line.startswith(b"HTTP/"):
        parts = _split_start(start_line, strict, 2)
        if len(parts) < 2 or len(parts[1]) != 3 or not parts[1].isdigit():
            raise MalformedStartLine(f"bad status line {start_line[:80]!r}")
        status = int(parts[1])
        if not 100 <= status <= 599:
            raise MalformedStartLine(f"status code {status} out of range")
        reason = parts[2] if len(parts) > 2 else b""
        entries, skipped = parse_fields(head, strict, eol + 1, skip_bad=True)
        return HttpMessage(
            HttpKind.response,
            _version(parts[0]),
            WarcHeaderMap._trusted(entries),
            end,
            total_length - end,
            status_code=status,
            reason=reason,
            skipped_lines=skipped,
        )

    parts = _split_start(start_line, strict, 2)
    if len(parts) != 3 or not parts[2].startswith(b"HTTP/") or not parts[0].isalpha():
        raise MalformedStartLine(f"bad start line {start_line[:80]!r}")
    if strict and (b" " in parts[2] or not parts[1]):
        raise MalformedStartLine(f"bad request line {start_line[:80]!r}")
    entries, skipped = parse_fields(head, strict, eol + 1, skip_bad=True)
    return HttpMessage(
        HttpKind.request,
        _version(parts[2].strip()),
        WarcHeaderMap._trusted(entries),
        end,
        total_length - end,
        method=parts[0],
        target=parts[1],
        skipped_lines=skipped,
    )


def is_http_content_type(value: Optional[bytes]) -> bool:
    if not value:
        return False
    return value[:16].lower() == b"application/http"
