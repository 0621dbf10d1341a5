"""Record-level compression framings: raw, gzip members and LZ4 frames.

A WARC file is read as the concatenation of its decompressed members.
:class:`DecompressingStream` keeps track of where in the file each member
starts so that readers can report offsets for later random access.
"""

from __future__ import annotations

import enum
import io
import struct
import zlib
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

import lz4.block
import xxhash

from .errors import CorruptMember, UnsupportedForCodec

GZIP_MAGIC = b"\x1f\x8b"
LZ4_MAGIC = b"\x04\x22\x4d\x18"
_LZ4_MAGIC_INT = 0x184D2204
_LZ4_SKIPPABLE_MASK = 0xFFFFFFF0
_LZ4_SKIPPABLE = 0x184D2A50
_LZ4_BLOCK_SIZES = {4: 1 << 16, 5: 1 << 18, 6: 1 << 20, 7: 1 << 22}
_LZ4_WRITE_BD = 4  # 64 KiB blocks
_LZ4_DICT_SIZE = 1 << 16

READ_CHUNK = 1 << 16
OUT_CHUNK = 1 << 16


class CodecKind(str, enum.Enum):
    none = "none"
    gzip = "gzip"
    lz4 = "lz4"


AUTO = "auto"


def detect_codec(prefix: bytes) -> CodecKind:
    if prefix[:2] == GZIP_MAGIC:
        return CodecKind.gzip
    if prefix[:4] == LZ4_MAGIC:
        return CodecKind.lz4
    return CodecKind.none


@dataclass(frozen=True)
class MemberBoundary:
    member_offset: int
    member_compressed_length: int
    uncompressed_length: int
    ended: bool = False


class _Member:
    __slots__ = ("offset", "start", "compressed", "uncompressed", "ended", "content_size")

    def __init__(self, offset, content_size=None):
        self.offset = offset
        self.start = 0  # logical (decompressed) position of first byte
        self.compressed = 0
        self.uncompressed = 0
        self.ended = False
        self.content_size = content_size

    def snapshot(self) -> MemberBoundary:
        return MemberBoundary(self.offset, self.compressed, self.uncompressed, self.ended)


class _Source:
    """Byte source with absolute offset tracking and a small pushback buffer."""

    def __init__(self, fileobj):
        self.f = fileobj
        try:
            self.offset = fileobj.tell()
        except (AttributeError, OSError, io.UnsupportedOperation):
            self.offset = 0
        try:
            self.seekable = fileobj.seekable()
        except AttributeError:
            self.seekable = False
        self._pending = b""
        self._size = None

    def read(self, n: int) -> bytes:
        if self._pending:
            data = self._pending[:n]
            self._pending = self._pending[n:]
            if len(data) < n:
                data += self.f.read(n - len(data))
        else:
            data = self.f.read(n)
        self.offset += len(data)
        return data

    def read_exact(self, n: int) -> bytes:
        data = self.read(n)
        while len(data) < n:
            more = self.read(n - len(data))
            if not more:
                break
            data += more
        return data

    def unread(self, data: bytes) -> None:
        self._pending = data + self._pending
        self.offset -= len(data)

    def skip(self, n: int) -> int:
        """Advance ``n`` bytes (fewer at end of input); returns the count advanced."""
        if n <= 0:
            return 0
        done = 0
        if self._pending:
            k = min(n, len(self._pending))
            self._pending = self._pending[k:]
            self.offset += k
            done = k
            n -= k
        if self.seekable and n > 0:
            pos = self.f.tell()
            if self._size is None or pos + n > self._size:
                self._size = self.f.seek(0, io.SEEK_END)
            k = max(0, min(n, self._size - pos))
            self.f.seek(pos + k)
            self.offset += k
            return done + k
        while n > 0:
            data = self.f.read(min(n, READ_CHUNK))
            if not data:
                break
            self.offset += len(data)
            done += len(data)
            n -= len(data)
        return done

    def seek(self, offset: int) -> None:
        self._pending = b""
        self.f.seek(offset)
        self.offset = offset


class _RawDecoder:
    kind = CodecKind.none

    def __init__(self, src: _Source):
        self.src = src
        self.member = _Member(src.offset)
        self.new_members = []

    def decode(self) -> Optional[bytes]:
        data = self.src.read(READ_CHUNK)
        if not data:
            return None
        self.member.uncompressed += len(data)
        self.member.compressed += len(data)
        return data

    def skip_raw(self, n: int) -> int:
        n = self.src.skip(n)
        self.member.uncompressed += n
        self.member.compressed += n
        return n

    def skip_member(self):
        raise UnsupportedForCodec("member skipping needs a compressed framing")


class _GzipDecoder:
    kind = CodecKind.gzip

    def __init__(self, src: _Source):
        self.src = src
        self.member: Optional[_Member] = None
        self._d = None
        self._in = b""
        self._next_offset = src.offset
        self.new_members = []

    def _start_member(self) -> bool:
        while len(self._in) < 2:
            more = self.src.read(READ_CHUNK)
            if not more:
                break
            self._in += more
        if not self._in:
            return False
        if self._in[:2] != GZIP_MAGIC:
            raise CorruptMember("not a gzip member", self._next_offset)
        self._d = zlib.decompressobj(16 + zlib.MAX_WBITS)
        self.member = _Member(self._next_offset)
        self.new_members.append(self.member)
        return True

    def begin(self) -> bool:
        return self._d is not None or self._start_member()

    def _end_member(self) -> None:
        m = self.member
        unused = self._d.unused_data
        m.compressed -= len(unused)
        m.ended = True
        self._next_offset = m.offset + m.compressed
        self._in = unused
        self._d = None

    def decode(self) -> Optional[bytes]:
        while True:
            d = self._d
            if d is None:
                if not self._start_member():
                    return None
                d = self._d
            m = self.member
            if d.unconsumed_tail:
                data = d.unconsumed_tail
            else:
                if self._in:
                    data, self._in = self._in, b""
                else:
                    data = self.src.read(READ_CHUNK)
                    if not data:
                        raise CorruptMember("truncated gzip member", m.offset)
                m.compressed += len(data)
            try:
                out = d.decompress(data, OUT_CHUNK)
            except zlib.error as e:
                raise CorruptMember(f"gzip: {e}", m.offset) from None
            if d.eof:
                self._end_member()
            if out:
                m.uncompressed += len(out)
                return out

    def skip_member(self) -> None:
        m = self.member
        while self._d is not None and self.member is m:
            d = self._d
            if d.unconsumed_tail:
                data = d.unconsumed_tail
            else:
                if self._in:
                    data, self._in = self._in, b""
                else:
                    data = self.src.read(READ_CHUNK)
                    if not data:
                        raise CorruptMember("truncated gzip member", m.offset)
                m.compressed += len(data)
            try:
                m.uncompressed += len(d.decompress(data, OUT_CHUNK))
            except zlib.error as e:
                raise CorruptMember(f"gzip: {e}", m.offset) from None
            if d.eof:
                self._end_member()


class _Lz4Decoder:
    kind = CodecKind.lz4

    def __init__(self, src: _Source):
        self.src = src
        self.member: Optional[_Member] = None
        self._in_frame = False
        self._next_size: Optional[int] = None
        self.new_members = []

    def _u32(self, what: str, offset: int) -> int:
        data = self.src.read_exact(4)
        if len(data) < 4:
            raise CorruptMember(f"truncated LZ4 frame ({what})", offset)
        return struct.unpack("<I", data)[0]

    def _start_frame(self) -> bool:
        while True:
            offset = self.src.offset
            magic = self.src.read_exact(4)
            if not magic:
                return False
            if len(magic) < 4:
                raise CorruptMember("truncated LZ4 magic", offset)
            magic_int = struct.unpack("<I", magic)[0]
            if magic_int & _LZ4_SKIPPABLE_MASK == _LZ4_SKIPPABLE:
                self.src.skip(self._u32("skippable size", offset))
                continue
            if magic_int != _LZ4_MAGIC_INT:
                raise CorruptMember("not an LZ4 frame", offset)
            break
        desc = self.src.read_exact(2)
        if len(desc) < 2:
            raise CorruptMember("truncated LZ4 frame descriptor", offset)
        flg, bd = desc
        if flg >> 6 != 1:
            raise CorruptMember("unsupported LZ4 frame version", offset)
        extra = (8 if flg & 0x08 else 0) + (4 if flg & 0x01 else 0)
        rest = self.src.read_exact(extra + 1)
        if len(rest) < extra + 1:
            raise CorruptMember("truncated LZ4 frame descriptor", offset)
        desc += rest[:extra]
        if (xxhash.xxh32_intdigest(desc) >> 8) & 0xFF != rest[-1]:
            raise CorruptMember("LZ4 header checksum mismatch", offset)
        block_max = _LZ4_BLOCK_SIZES.get((bd >> 4) & 0x07)
        if block_max is None:
            raise CorruptMember("invalid LZ4 block size", offset)
        content_size = struct.unpack("<Q", desc[2:10])[0] if flg & 0x08 else None
        self._block_max = block_max
        self._linked = not flg & 0x20
        self._block_checksum = bool(flg & 0x10)
        self._content_checksum = bool(flg & 0x04)
        self._xxh = xxhash.xxh32() if self._content_checksum else None
        self._dict = b""
        self.member = m = _Member(offset, content_size)
        self.new_members.append(m)
        m.compressed = self.src.offset - offset
        self._in_frame = True
        self._next_size = None
        return True

    def begin(self) -> bool:
        return self._in_frame or self._start_frame()

    def _end_frame(self) -> None:
        m = self.member
        if self._content_checksum:
            stored = self._u32("content checksum", m.offset)
            if self._xxh is not None and self._xxh.intdigest() != stored:
                raise CorruptMember("LZ4 content checksum mismatch", m.offset)
        if m.content_size is not None and self._xxh is not None and m.uncompressed != m.content_size:
            raise CorruptMember("LZ4 content size mismatch", m.offset)
        m.compressed = self.src.offset - m.offset
        m.ended = True
        self._in_frame = False

    def _block_size(self) -> int:
        if self._next_size is not None:
            size, self._next_size = self._next_size, None
            return size
        return self._u32("block size", self.member.offset)

    def decode(self) -> Optional[bytes]:
        while True:
            if not self._in_frame and not self._start_frame():
                return None
            m = self.member
            size = self._block_size()
            if size == 0:
                self._end_frame()
                continue
            raw = size & 0x80000000
            size &= 0x7FFFFFFF
            if size > self._block_max:
                raise CorruptMember("LZ4 block larger than block maximum", m.offset)
            data = self.src.read_exact(size)
            if len(data) < size:
                raise CorruptMember("truncated LZ4 block", m.offset)
            if self._block_checksum:
                if self._u32("block checksum", m.offset) != xxhash.xxh32_intdigest(data):
                    raise CorruptMember("LZ4 block checksum mismatch", m.offset)
            if raw:
                out = data
            else:
                try:
                    if self._linked and self._dict:
                        out = lz4.block.decompress(
                            data, uncompressed_size=self._block_max, dict=self._dict
                        )
                    else:
                        out = lz4.block.decompress(data, uncompressed_size=self._block_max)
                except lz4.block.LZ4BlockError:
                    raise CorruptMember("invalid LZ4 block", m.offset) from None
            if self._xxh is not None:
                self._xxh.update(out)
            if self._linked:
                self._dict = (self._dict + out)[-_LZ4_DICT_SIZE:]
            m.uncompressed += len(out)
            # look ahead so a frame is marked ended as soon as its last block is out
            self._next_size = self._u32("block size", m.offset)
            if self._next_size == 0:
                self._next_size = None
                self._end_frame()
            else:
                m.compressed = self.src.offset - m.offset - 4
            if out:
                return out

    def skip_member(self) -> None:
        """Hop over the rest of the current frame using block length prefixes only."""
        if not self._in_frame:
            return
        m = self.member
        self._xxh = None  # content can no longer be checked
        while True:
            size = self._block_size()
            if size == 0:
                break
            size &= 0x7FFFFFFF
            if size > self._block_max:
                raise CorruptMember("LZ4 block larger than block maximum", m.offset)
            want = size + (4 if self._block_checksum else 0)
            if self.src.skip(want) < want:
                raise CorruptMember("truncated LZ4 frame", m.offset)
        if self._content_checksum and self.src.skip(4) < 4:
            raise CorruptMember("truncated LZ4 frame", m.offset)
        if m.content_size is not None:
            m.uncompressed = m.content_size
        m.compressed = self.src.offset - m.offset
        m.ended = True
        self._in_frame = False



_DECODERS = {
    CodecKind.none: _RawDecoder,
    CodecKind.gzip: _GzipDecoder,
    CodecKind.lz4: _Lz4Decoder,
}
_MAGIC = {CodecKind.gzip: GZIP_MAGIC + b"\x08", CodecKind.lz4: LZ4_MAGIC}


class DecompressingStream:
    """Buffered stream of decompressed bytes over a sequence of members.

    Keeps one reusable output buffer. Positions returned by :meth:`tell` are
    logical (decompressed) positions; file offsets are exposed through
    :meth:`member_boundary` and :meth:`member_at`.
    """

    def __init__(self, source, kind: CodecKind, *, track_members: bool = False):
        self.kind = CodecKind(kind)
        self._src = source if isinstance(source, _Source) else _Source(source)
        self._decoder = _DECODERS[self.kind](self._src)
        self._buf = bytearray()
        self._pos = 0  # read index into _buf
        self._buf_start = 0  # logical position of _buf[0]
        self._members = deque()
        self._last_member = None
        self.exhausted = False
        self.history = [] if track_members else None
        self.garbage_bytes = 0
        self.members_seen = 0
        self._raw_base = self._src.offset
        if self.kind is CodecKind.none:
            self.mark_record_start()
            self.members_seen = 0
        else:
            self._note_member()

    # -- member bookkeeping -------------------------------------------------

    def _note_member(self) -> None:
        new = self._decoder.new_members
        if not new:
            return
        for m in new:
            if self.history is not None and self._last_member is not None:
                self.history.append(self._last_member)
            m.start = self._buf_start + len(self._buf)
            self._members.append(m)
            self._last_member = m
            self.members_seen += 1
        new.clear()

    def _prune(self) -> None:
        members = self._members
        pos = self._buf_start + self._pos
        while len(members) > 1 and members[1].start <= pos and members[0].ended:
            members.popleft()

    def member_at(self) -> Optional[_Member]:
        """The member holding the next unread byte (the last one seen at end of stream)."""
        self._prune()
        pos = self._buf_start + self._pos
        current = None
        for m in self._members:
            if m.start <= pos:
                current = m
            else:
                break
        return current

    def member_boundary(self) -> MemberBoundary:
        m = self.member_at()
        if m is None:
            return MemberBoundary(self._src.offset, 0, 0, True)
        if self.kind is CodecKind.none:
            n = self.tell() - m.start
            return MemberBoundary(m.offset, n, n, self.exhausted)
        return m.snapshot()

    def mark_record_start(self) -> None:
        """Uncompressed streams only: record boundaries double as member boundaries."""
        pos = self.tell()
        m = _Member(self._raw_base + pos)
        m.start = pos
        self._members = deque([m])
        self._last_member = m
        self.members_seen += 1

    def finished_members(self) -> list:
        """Boundaries of all members seen so far (requires ``track_members``)."""
        if self.history is None:
            raise ValueError("stream was opened without track_members")
        done = list(self.history)
        if self._last_member is not None and self._last_member.ended:
            done.append(self._last_member)
        return [m.snapshot() for m in done]

    # -- buffer ---------------------------------------------------------------

    def _fill(self, need: int) -> bool:
        """Make at least ``need`` unread bytes available; False if the stream ends first."""
        buf = self._buf
        while len(buf) - self._pos < need:
            if self.exhausted:
                return False
            chunk = self._decoder.decode()
            if self._pos and self._pos >= len(buf) >> 1:
                del buf[: self._pos]
                self._buf_start += self._pos
                self._pos = 0
            self._note_member()
            if chunk is None:
                self.exhausted = True
                return False
            buf += chunk
        return True

    def tell(self) -> int:
        return self._buf_start + self._pos

    def peek(self, n: int) -> bytes:
        self._fill(n)
        return bytes(self._buf[self._pos : self._pos + n])

    def read(self, n: int = -1) -> bytes:
        if n is None or n < 0:
            while self._fill(len(self._buf) - self._pos + OUT_CHUNK):
                pass
            n = len(self._buf) - self._pos
        elif len(self._buf) - self._pos < n:
            self._fill(n)
        pos = self._pos
        data = bytes(self._buf[pos : pos + n])
        self._pos = pos + len(data)
        return data

    def readinto(self, b) -> int:
        data = self.read(len(b))
        b[: len(data)] = data
        return len(data)

    def find(self, sub: bytes, limit: int) -> int:
        """Offset of ``sub`` relative to the read position, searching at most ``limit`` bytes; -1 if absent."""
        start = self._pos
        while True:
            end = min(len(self._buf), self._pos + limit)
            i = self._buf.find(sub, start, end)
            if i >= 0:
                return i - self._pos
            if end - self._pos >= limit:
                return -1
            offset = max(0, end - self._pos - len(sub) + 1)
            if not self._fill(len(self._buf) - self._pos + 1):
                return -1
            start = self._pos + offset

    def skip(self, n: int) -> int:
        """Discard ``n`` decompressed bytes without materializing them; returns bytes skipped."""
        avail = len(self._buf) - self._pos
        if n <= avail:
            self._pos += n
            return n
        self._buf_start += len(self._buf)
        self._buf.clear()
        self._pos = 0
        left = n - avail
        dec = self._decoder
        if isinstance(dec, _RawDecoder) and not self.exhausted:
            got = dec.skip_raw(left)
            self._buf_start += got
            if got < left:
                self.exhausted = True
            return avail + got
        while left > 0:
            if self.exhausted:
                break
            chunk = dec.decode()
            self._note_member()
            if chunk is None:
                self.exhausted = True
                break
            if len(chunk) > left:
                self._buf += chunk
                self._pos = left
                left = 0
            else:
                self._buf_start += len(chunk)
                left -= len(chunk)
        return n - left

    def skip_member(self) -> MemberBoundary:
        """Advance to the start of the next member, doing as little decoding as the framing allows."""
        if self.kind is CodecKind.none:
            raise UnsupportedForCodec("member skipping is undefined for uncompressed input")
        dec = self._decoder
        if len(self._buf) == self._pos and (dec.member is None or dec.member.ended):
            # next unread byte belongs to a member that has not been started yet
            if self.exhausted or not dec.begin():
                self.exhausted = True
                return self.member_boundary()
            self._note_member()
        m = self.member_at()
        if m is None:
            return self.member_boundary()
        # the next member may already be in the buffer
        for nxt in self._members:
            if nxt.start > self.tell():
                self._pos = nxt.start - self._buf_start
                return m.snapshot()
        self._buf_start += len(self._buf)
        self._buf.clear()
        self._pos = 0
        if m is self._decoder.member and not m.ended:
            produced = m.uncompressed
            self._decoder.skip_member()
            self._buf_start += m.uncompressed - produced
        return m.snapshot()

    # -- recovery -------------------------------------------------------------

    def resync(self, after: int) -> bool:
        """Restart decoding at the first member magic found past file offset ``after``.

        Returns False when no further member exists. For raw streams the
        caller does its own scanning; this only repositions the source.
        """
        if self.kind is CodecKind.none:
            raise UnsupportedForCodec("resync by magic needs a compressed framing")
        magic = _MAGIC[self.kind]
        src = self._src
        if src.seekable:
            src.seek(after + 1)
            pos = after + 1
        else:
            pos = src.offset
        carry = b""
        found = None
        while found is None:
            data = src.read(READ_CHUNK)
            if not data:
                break
            window = carry + data
            i = window.find(magic)
            if i >= 0:
                found = pos - len(carry) + i
                break
            carry = window[-(len(magic) - 1) :]
            pos += len(data)
        self._buf_start += len(self._buf)
        self._buf.clear()
        self._pos = 0
        self._members.clear()
        self._last_member = None
        if found is None:
            self.garbage_bytes += max(0, src.offset - after)
            self.exhausted = True
            return False
        self.garbage_bytes += found - after
        if src.seekable:
            src.seek(found)
        else:
            src.unread(window[i:])
        self._decoder = _DECODERS[self.kind](src)
        self.exhausted = False
        return True

    def close(self) -> None:
        self._buf = bytearray()


def open_read(source, kind: Union[CodecKind, str] = AUTO, **kw) -> DecompressingStream:
    src = source if isinstance(source, _Source) else _Source(source)
    if kind is None or kind == AUTO:
        prefix = src.read_exact(4)
        src.unread(prefix)
        kind = detect_codec(prefix)
    return DecompressingStream(src, CodecKind(kind), **kw)


def member_boundary(stream: DecompressingStream) -> MemberBoundary:
    return stream.member_boundary()


def seek_member(source, offset: int, kind: Union[CodecKind, str] = AUTO, **kw) -> DecompressingStream:
    """Open a stream that starts decoding at the member beginning at ``offset``."""
    source.seek(offset)
    src = _Source(source)
    prefix = src.read_exact(4)
    src.unread(prefix)
    if kind is None or kind == AUTO:
        kind = detect_codec(prefix)
    kind = CodecKind(kind)
    if kind is not CodecKind.none and detect_codec(prefix) is not kind:
        raise CorruptMember(f"no {kind.value} member starts here", offset)
    return DecompressingStream(src, kind, **kw)


def skip_member(stream: DecompressingStream) -> MemberBoundary:
    return stream.skip_member()


# -- writing ------------------------------------------------------------------


class MemberEncoder:
    """Incremental encoder for exactly one member.

    ``content_size`` is required for LZ4 (it is stored in the frame header so
    readers can skip whole frames by block hopping).
    """

    def __init__(self, kind: CodecKind, level: Optional[int] = None, content_size: Optional[int] = None):
        self.kind = CodecKind(kind)
        self.level = level
        self._parts = []
        if self.kind is CodecKind.gzip:
            lvl = zlib.Z_DEFAULT_COMPRESSION if level is None else level
            self._z = zlib.compressobj(lvl, zlib.DEFLATED, 16 + zlib.MAX_WBITS)
        elif self.kind is CodecKind.lz4:
            if level is not None and not 0 <= level <= 16:
                raise ValueError("lz4 level must be within 0..16")
            self._pending = bytearray()
            self._xxh = xxhash.xxh32()
            self._size = 0
            self._content_size = content_size
            flg = 0x40 | 0x20 | 0x04 | (0x08 if content_size is not None else 0)
            desc = bytes([flg, _LZ4_WRITE_BD << 4])
            if content_size is not None:
                desc += struct.pack("<Q", content_size)
            hc = (xxhash.xxh32_intdigest(desc) >> 8) & 0xFF
            self._parts.append(LZ4_MAGIC + desc + bytes([hc]))

    def _lz4_block(self, data) -> bytes:
        if self.level:
            comp = lz4.block.compress(data, mode="high_compression", compression=self.level, store_size=False)
        else:
            comp = lz4.block.compress(data, store_size=False)
        if len(comp) >= len(data):
            return struct.pack("<I", len(data) | 0x80000000) + bytes(data)
        return struct.pack("<I", len(comp)) + comp

    def write(self, data) -> None:
        if not data:
            return
        if self.kind is CodecKind.none:
            self._parts.append(bytes(data))
        elif self.kind is CodecKind.gzip:
            self._parts.append(self._z.compress(data))
        else:
            self._xxh.update(data)
            self._size += len(data)
            pending = self._pending
            pending += data
            bs = _LZ4_BLOCK_SIZES[_LZ4_WRITE_BD]
            if len(pending) >= bs:
                full = len(pending) - len(pending) % bs
                mv = memoryview(pending)
                for i in range(0, full, bs):
                    self._parts.append(self._lz4_block(mv[i : i + bs]))
                mv.release()
                del pending[:full]

    def finish(self) -> bytes:
        if self.kind is CodecKind.gzip:
            self._parts.append(self._z.flush())
        elif self.kind is CodecKind.lz4:
            if self._pending:
                self._parts.append(self._lz4_block(bytes(self._pending)))
            if self._content_size is not None and self._size != self._content_size:
                raise ValueError("LZ4 member content size does not match declared size")
            self._parts.append(b"\x00\x00\x00\x00" + struct.pack("<I", self._xxh.intdigest()))
        out = b"".join(self._parts)
        self._parts = []
        return out


def encode_member(payload, kind: CodecKind, level: Optional[int] = None) -> bytes:
    enc = MemberEncoder(kind, level, content_size=len(payload))
    enc.write(payload)
    return enc.finish()


def write_member(sink, payload, kind: CodecKind, level: Optional[int] = None) -> MemberBoundary:
    try:
        offset = sink.tell()
    except (AttributeError, OSError, io.UnsupportedOperation):
        offset = 0
    data = encode_member(payload, kind, level)
    sink.write(data)
    return MemberBoundary(offset, len(data), len(payload), True)
