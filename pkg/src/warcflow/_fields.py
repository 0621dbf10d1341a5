"""Field-line parsing shared by the WARC and HTTP header parsers."""

from .errors import MalformedHeaderLine

_WS = b" \t"


def parse_fields(block: bytes, strict: bool, base_offset: int = 0, skip_bad: bool = False):
    """Parse ``Name: value`` lines (start line and terminator already removed).

    Returns ``(entries, skipped)``. Continuation lines are folded into the
    previous value with a single space unless ``strict``. Lines without a
    colon raise :class:`MalformedHeaderLine`, or are dropped and counted
    when ``skip_bad`` is set and not ``strict``.
    """
    entries = []
    skipped = 0
    if not block:
        return entries, skipped
    if strict:
        lines = block.split(b"\r\n")
        if b"\n" in block.replace(b"\r\n", b"") or b"\r" in block.replace(b"\r\n", b""):
            raise MalformedHeaderLine("bare CR or LF in header block", base_offset + _bare_eol(block))
    else:
        lines = block.splitlines()
    for line in lines:
        if not line:
            continue
        if line[0] in _WS:
            if strict or not entries:
                raise MalformedHeaderLine("unexpected continuation line", base_offset + block.find(line))
            name, value = entries[-1]
            entries[-1] = (name, value + b" " + line.strip(_WS))
            continue
        name, sep, value = line.partition(b":")
        if not sep or not name or (strict and name != name.strip(_WS)):
            if skip_bad and not strict:
                skipped += 1
                continue
            raise MalformedHeaderLine(f"malformed header line {line[:60]!r}", base_offset + block.find(line))
        entries.append((name.rstrip(_WS), value.strip(_WS)))
    return entries, skipped


def _bare_eol(block: bytes) -> int:
    i = 0
    while True:
        j = block.find(b"\n", i)
        k = block.find(b"\r", i)
        if j < 0 and k < 0:
            return 0
        if k >= 0 and (j < 0 or k < j):
            if block[k + 1 : k + 2] != b"\n":
                return k
            i = k + 2
        else:
            return j
