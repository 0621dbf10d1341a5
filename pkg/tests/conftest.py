import subprocess
from collections import OrderedDict

import pytest

from warcflow.codec import CodecKind
from warcflow.generate import generate_file

CODECS = [CodecKind.none, CodecKind.gzip, CodecKind.lz4]


def oracle_digest(data: bytes, alg: str = "sha1") -> str:
    """Digest header value computed with coreutils, not with the library."""
    tool = {"sha1": "sha1sum", "md5": "md5sum", "sha256": "sha256sum"}[alg]
    hexd = subprocess.run([tool], input=data, capture_output=True, check=True).stdout.split()[0]
    raw = bytes.fromhex(hexd.decode())
    b32 = subprocess.run(["base32", "-w0"], input=raw, capture_output=True, check=True).stdout
    return f"{alg}:{b32.strip().rstrip(b'=').decode()}"


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    """200-record generated corpus in every codec: {codec: (path, geometries)}."""
    d = tmp_path_factory.mktemp("corpus")
    out = {}
    for k in CODECS:
        path = d / f"small.{k.value}.warc"
        out[k] = (path, generate_file(path, 200, k, seed=7))
    return out


_ACCEPTANCE = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        ok = rep.outcome == "passed"
        _ACCEPTANCE[name] = _ACCEPTANCE.get(name, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, ok in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
