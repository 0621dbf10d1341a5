"""Deterministic synthetic WARC corpora with HTML-like response bodies.

Used for fixtures and benchmarks. Output is a pure function of the seed and
parameters.
"""

from __future__ import annotations

import datetime
import random
import string
import uuid
from typing import Iterator, Optional, Tuple

from .codec import CodecKind
from .model import Digest, RecordType, WarcHeaderMap
from .writer import WarcWriter, WriteOptions

DEFAULT_WEIGHTS = {
    RecordType.request: 0.32,
    RecordType.response: 0.32,
    RecordType.metadata: 0.27,
    RecordType.revisit: 0.03,
    RecordType.resource: 0.03,
    RecordType.conversion: 0.015,
    RecordType.continuation: 0.005,
    RecordType.warcinfo: 0.01,
}

_BASE_DATE = datetime.datetime(2021, 1, 1, tzinfo=datetime.timezone.utc)
_TAGS = ["div", "span", "section", "article", "li", "a", "em", "strong"]
_CSS_PROPS = ["margin", "padding", "color", "font-size", "display", "border", "width", "line-height"]


class _Lexicon:
    def __init__(self, rng: random.Random, size: int = 4000):
        words = set()
        while len(words) < size:
            n = max(2, min(12, int(rng.gauss(6, 2.5))))
            words.add("".join(rng.choices(string.ascii_lowercase, k=n)))
        self.words = sorted(words)
        rng.shuffle(self.words)
        self.weights = [1.0 / (i + 1) for i in range(size)]
        phrases = []
        for _ in range(1500):
            phrases.append(" ".join(rng.choices(self.words, weights=self.weights, k=rng.randint(2, 5))))
        self.phrases = phrases

    def sentence(self, rng: random.Random) -> str:
        parts = rng.choices(self.phrases, k=rng.randint(2, 6))
        s = " ".join(parts)
        return s[:1].upper() + s[1:] + rng.choice([".", ".", ".", "?", "!"])


class _Site:
    def __init__(self, rng: random.Random, lex: _Lexicon, index: int):
        self.host = f"www.{rng.choice(lex.words)}{index}.{rng.choice(['com', 'org', 'net', 'de', 'io'])}"
        css = []
        for _ in range(rng.randint(20, 80)):
            props = "; ".join(
                f"{rng.choice(_CSS_PROPS)}: {rng.randint(0, 40)}px" for _ in range(rng.randint(2, 6))
            )
            css.append(f".{rng.choice(lex.words)}-{rng.choice(lex.words)} {{ {props} }}")
        script = "\n".join(
            f"  var {rng.choice(lex.words)} = document.getElementById('{rng.choice(lex.words)}');"
            for _ in range(rng.randint(5, 40))
        )
        title = " ".join(rng.choices(lex.words, k=3)).title()
        self.head = (
            "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
            f"<title>{title}</title>\n<style>\n" + "\n".join(css) + "\n</style>\n"
            f"<script>\n{script}\n</script>\n</head>\n<body>\n"
        )
        links = "\n".join(
            f'  <li><a href="https://{self.host}/{rng.choice(lex.words)}/{rng.choice(lex.words)}.html">'
            f"{rng.choice(lex.words).title()}</a></li>"
            for _ in range(rng.randint(8, 40))
        )
        self.nav = f'<nav class="main-nav">\n<ul>\n{links}\n</ul>\n</nav>\n<main>\n'
        self.footer = (
            f'</main>\n<footer><p>&copy; 2021 {self.host}. All rights reserved.</p></footer>\n</body>\n</html>\n'
        )
        self.paths = [f"/{rng.choice(lex.words)}/{rng.choice(lex.words)}" for _ in range(50)]


class CorpusGenerator:
    """Produce ``(headers, payload)`` pairs for a synthetic crawl.

    ``median_body`` and ``sigma`` shape the log-normal size distribution of
    response bodies; ``large_fraction`` of responses are drawn uniformly
    from the upper quarter of ``max_payload`` so the size range reaches the
    cap. A small share of resource records have empty payloads.
    """

    def __init__(self, seed: int = 0, *, median_body: int = 12_000, sigma: float = 1.0,
                 max_payload: int = 1 << 20, large_fraction: float = 0.003,
                 type_weights: Optional[dict] = None):
        self.rng = random.Random(seed)
        self.median_body = median_body
        self.sigma = sigma
        self.max_payload = max_payload
        self.large_fraction = large_fraction
        weights = type_weights or DEFAULT_WEIGHTS
        self.types = list(weights)
        self.cum = []
        total = 0.0
        for t in self.types:
            total += weights[t]
            self.cum.append(total)
        self.lex = _Lexicon(self.rng)
        self.sites = [_Site(self.rng, self.lex, i) for i in range(40)]
        self.paragraphs = [
            " ".join(self.lex.sentence(self.rng) for _ in range(self.rng.randint(2, 8)))
            for _ in range(3000)
        ]
        self._last_response_id = None
        self._i = 0

    # -- payload builders -------------------------------------------------------

    def _html(self, site: _Site, size: int) -> bytes:
        rng = self.rng
        parts = [site.head, site.nav]
        n = len(site.head) + len(site.nav) + len(site.footer)
        while n < size:
            tag = rng.choice(_TAGS)
            cls = rng.choice(self.lex.words)
            p = f'<{tag} class="{cls}"><p>{rng.choice(self.paragraphs)}</p></{tag}>\n'
            parts.append(p)
            n += len(p)
        parts.append(site.footer)
        body = "".join(parts).encode()
        return body[:size]

    def _body_size(self) -> int:
        rng = self.rng
        if rng.random() < self.large_fraction:
            return rng.randint(self.max_payload * 3 // 4, self.max_payload)
        return int(min(self.max_payload, rng.lognormvariate(0, self.sigma) * self.median_body))

    def _http_response_head(self, body_len: int, ctype: str = "text/html; charset=UTF-8") -> bytes:
        rng = self.rng
        status = rng.choices([(200, "OK"), (301, "Moved Permanently"), (404, "Not Found")], [0.9, 0.05, 0.05])[0]
        return (
            f"HTTP/1.1 {status[0]} {status[1]}\r\n"
            f"Date: {self._date().strftime('%a, %d %b %Y %H:%M:%S GMT')}\r\n"
            "Server: nginx\r\n"
            f"Content-Type: {ctype}\r\n"
            f"Content-Length: {body_len}\r\n"
            f"Set-Cookie: sid={rng.getrandbits(64):016x}; Path=/\r\n"
            f"Set-Cookie: pref={rng.randint(0, 9)}; Path=/\r\n"
            "Connection: close\r\n\r\n"
        ).encode()

    def _date(self) -> datetime.datetime:
        return _BASE_DATE + datetime.timedelta(seconds=self._i)

    def _uuid(self) -> bytes:
        return f"<urn:uuid:{uuid.UUID(int=self.rng.getrandbits(128), version=4)}>".encode()

    def _fields(self, pairs) -> bytes:
        return "".join(f"{k}: {v}\r\n" for k, v in pairs).encode()

    # -- records ----------------------------------------------------------------

    def record(self, rtype: RecordType) -> Tuple[WarcHeaderMap, bytes]:
        rng = self.rng
        site = rng.choice(self.sites)
        url = f"https://{site.host}{rng.choice(site.paths)}.html"
        rid = self._uuid()
        h = WarcHeaderMap()
        h.append(b"WARC-Type", rtype.value)
        h.append(b"WARC-Date", self._date().strftime("%Y-%m-%dT%H:%M:%SZ"))
        h.append(b"WARC-Record-ID", rid)
        if rtype is not RecordType.warcinfo:
            h.append(b"WARC-Target-URI", url)

        if rtype is RecordType.warcinfo:
            payload = self._fields([
                ("software", "warcflow-generator"),
                ("format", "WARC File Format 1.1"),
                ("isPartOf", f"synthetic-crawl-{rng.randint(0, 999)}"),
                ("robots", "obey"),
            ])
            h.append(b"Content-Type", b"application/warc-fields")
        elif rtype is RecordType.request:
            payload = (
                f"GET {url.split(site.host, 1)[1]} HTTP/1.1\r\nHost: {site.host}\r\n"
                "User-Agent: Mozilla/5.0 (compatible; warcflow-generator/1.0)\r\n"
                "Accept: text/html,application/xhtml+xml;q=0.9,*/*;q=0.8\r\n"
                "Accept-Encoding: identity\r\nConnection: close\r\n\r\n"
            ).encode()
            h.append(b"Content-Type", b"application/http; msgtype=request")
        elif rtype is RecordType.response:
            size = self._body_size()
            head = self._http_response_head(0)
            body = self._html(site, max(0, size - len(head)))
            payload = self._http_response_head(len(body)) + body
            payload = payload[: self.max_payload]
            h.append(b"Content-Type", b"application/http; msgtype=response")
            self._last_response_id = rid
        elif rtype is RecordType.revisit:
            payload = self._http_response_head(0)
            h.append(b"Content-Type", b"application/http; msgtype=response")
            h.append(b"WARC-Profile", b"http://netpreserve.org/warc/1.1/revisit/identical-payload-digest")
            if self._last_response_id:
                h.append(b"WARC-Refers-To", self._last_response_id)
            h.append(b"WARC-Payload-Digest", Digest.of(rng.randbytes(32)).to_header())
        elif rtype is RecordType.metadata:
            payload = self._fields([
                ("fetchTimeMs", rng.randint(10, 5000)),
                ("charset-detected", "UTF-8"),
                ("languages-cld2", '{"reliable":true,"languages":[{"code":"en"}]}'),
            ])
            h.append(b"Content-Type", b"application/warc-fields")
        elif rtype is RecordType.resource:
            if rng.random() < 0.25:
                payload = b""
            else:
                payload = self._html(site, min(self.max_payload, self._body_size() // 4))
            h.append(b"Content-Type", b"text/html")
        elif rtype is RecordType.conversion:
            payload = " ".join(rng.choice(self.paragraphs) for _ in range(rng.randint(1, 10))).encode()
            h.append(b"Content-Type", b"text/plain")
        else:
            payload = " ".join(rng.choice(self.paragraphs) for _ in range(rng.randint(1, 5))).encode()
            h.append(b"Content-Type", b"application/http; msgtype=response")
            h.append(b"WARC-Segment-Number", b"2")
            h.append(b"WARC-Segment-Origin-ID", self._last_response_id or self._uuid())
            h.append(b"WARC-Segment-Total-Length", str(len(payload) * 2).encode())
        return h, payload

    def __iter__(self) -> Iterator[Tuple[WarcHeaderMap, bytes]]:
        self._i = 0
        yield self.record(RecordType.warcinfo)
        while True:
            self._i += 1
            rtype = self.rng.choices(self.types, cum_weights=self.cum)[0]
            yield self.record(rtype)

    def take(self, n: int):
        it = iter(self)
        return [next(it) for _ in range(n)]


def write_corpus(sink, n_records: Optional[int] = None, codec=CodecKind.gzip, seed: int = 0, *,
                 digests: bool = True, level: Optional[int] = None, min_bytes: Optional[int] = None,
                 **gen_kw) -> list:
    """Write a generated corpus to ``sink``; returns the geometry of every record.

    Stops after ``n_records`` records or once ``min_bytes`` of record
    content have been written, whichever is given (both: whichever is later).
    """
    if n_records is None and min_bytes is None:
        raise ValueError("give n_records or min_bytes")
    gen = CorpusGenerator(seed, **gen_kw)
    writer = WarcWriter(sink, WriteOptions(codec=codec, level=level, compute_digests=digests))
    geoms = []
    content = 0
    for headers, payload in gen:
        if (n_records is None or len(geoms) >= n_records) and (min_bytes is None or content >= min_bytes):
            break
        geoms.append(writer.write_record(headers, payload))
        content += len(payload)
    return geoms


def generate_file(path, n_records=None, codec=CodecKind.gzip, seed: int = 0, **kw) -> list:
    with open(path, "wb") as f:
        return write_corpus(f, n_records, codec, seed, **kw)
