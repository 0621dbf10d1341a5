import pytest
from hypothesis import given, settings, strategies as st

from warcflow import HttpKind, MalformedStartLine, http_header_get, parse_http_message
from warcflow.errors import HeaderSectionTooLarge, IncompleteHeaderSection
from warcflow.http import HEADER_SECTION_CAP, is_http_content_type

RESPONSE = b"HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\nhello!"


def test_response_example():
    head = RESPONSE[: RESPONSE.index(b"\r\n\r\n") + 4]
    msg = parse_http_message(RESPONSE, len(RESPONSE))
    assert msg.kind is HttpKind.response
    assert msg.version == "1.1"
    assert msg.status_code == 200 and msg.reason == b"OK"
    assert msg.body_offset == len(head)
    assert msg.body_length == len(b"hello!")
    assert http_header_get(msg, "content-type") == b"text/html"
    assert RESPONSE[msg.body_offset:] == b"hello!"


def test_request_example():
    data = b"GET /a?b=c HTTP/1.0\r\nHost: example.org\r\nAccept: */*\r\n\r\n"
    msg = parse_http_message(data, len(data))
    assert msg.kind is HttpKind.request
    assert (msg.method, msg.target, msg.version) == (b"GET", b"/a?b=c", "1.0")
    assert msg.body_length == 0
    assert msg.header(b"HOST") == b"example.org"


def test_reason_with_spaces_and_empty_reason():
    data = b"HTTP/1.1 301 Moved Permanently\r\n\r\n"
    assert parse_http_message(data, len(data)).reason == b"Moved Permanently"
    data = b"HTTP/1.1 204\r\n\r\n"
    assert parse_http_message(data, len(data)).reason == b""


def test_other_version():
    data = b"HTTP/2 200 OK\r\n\r\n"
    assert parse_http_message(data, len(data)).version == "other"


def test_duplicate_headers_kept_in_order():
    data = b"HTTP/1.1 200 OK\r\nSet-Cookie: a=1\r\nset-cookie: b=2\r\n\r\n"
    msg = parse_http_message(data, len(data))
    assert msg.headers.get_all("Set-Cookie") == [b"a=1", b"b=2"]
    assert msg.header("set-cookie") == b"a=1"


def test_lenient_bare_lf():
    data = b"HTTP/1.1 200 OK\nA: 1\n\nbody"
    msg = parse_http_message(data, len(data))
    assert msg.body_offset == len(data) - 4
    assert msg.header("a") == b"1"
    with pytest.raises(MalformedStartLine):
        parse_http_message(data, len(data), strict=True)


def test_lenient_skips_bad_lines():
    data = b"HTTP/1.1 200 OK\r\nno colon here\r\nA: 1\r\n\r\n"
    msg = parse_http_message(data, len(data))
    assert msg.skipped_lines == 1
    assert msg.header("a") == b"1"


@pytest.mark.parametrize("start", [b"HTTP/1.1 2000 OK", b"HTTP/1.1 abc OK", b"HTTP/1.1 999 X", b"garbage"])
def test_bad_start_lines(start):
    data = start + b"\r\n\r\n"
    with pytest.raises(MalformedStartLine):
        parse_http_message(data, len(data))


def test_strict_rejects_double_spaces():
    data = b"GET  /  HTTP/1.1\r\n\r\n"
    parse_http_message(data, len(data))
    with pytest.raises(MalformedStartLine):
        parse_http_message(data, len(data), strict=True)


def test_incomplete_and_unterminated():
    with pytest.raises(IncompleteHeaderSection):
        parse_http_message(RESPONSE[:20], len(RESPONSE))
    with pytest.raises(MalformedStartLine):
        parse_http_message(RESPONSE[:20], 20)


def test_header_section_cap():
    big = b"HTTP/1.1 200 OK\r\nX: " + b"a" * HEADER_SECTION_CAP + b"\r\n\r\n"
    with pytest.raises(HeaderSectionTooLarge):
        parse_http_message(big, len(big))
    with pytest.raises(HeaderSectionTooLarge):
        parse_http_message(big[:HEADER_SECTION_CAP], len(big))


def test_content_type_detection():
    assert is_http_content_type(b"application/http; msgtype=response")
    assert is_http_content_type(b"Application/HTTP")
    assert not is_http_content_type(b"text/html")
    assert not is_http_content_type(None)


_token = st.text(alphabet="abcdefghijklmnopqrstuvwxyz-", min_size=1, max_size=10)
_value = st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789 /;=", max_size=20).map(str.strip)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(_token, _value), max_size=8), st.binary(max_size=200), st.integers(0, 300))
def test_body_geometry_and_prefix_stability(fields, body, cut):
    head = b"HTTP/1.1 200 OK\r\n" + b"".join(f"{k}: {v}\r\n".encode() for k, v in fields) + b"\r\n"
    data = head + body
    msg = parse_http_message(data, len(data))
    assert msg.body_offset == len(head)
    assert msg.body_offset + msg.body_length == len(data)
    assert [(k.decode(), v.decode()) for k, v in msg.headers] == list(fields)
    # any prefix that still holds the full head gives the same result
    prefix = data[: len(head) + min(cut, len(body))]
    again = parse_http_message(prefix, len(data))
    assert (again.body_offset, again.body_length, again.headers) == (msg.body_offset, msg.body_length, msg.headers)


def test_html_response_literal():
    data = b"HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n<html>"
    msg = parse_http_message(data, len(data))
    assert (msg.kind, msg.status_code, msg.reason, len(msg.headers)) == (HttpKind.response, 200, b"OK", 1)
    assert msg.body_offset == len(data) - len(b"<html>") == 44
    assert msg.body_length == 6
