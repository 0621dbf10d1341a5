"""Throughput harness: records/s per codec and parse mode."""

from __future__ import annotations

import io
import statistics
import time
from dataclasses import asdict, dataclass

from .codec import AUTO, CodecKind, detect_codec
from .parser import ArchiveIterator, IterationOptions

MODES = ("none", "http", "http+checksum")

_MODE_OPTIONS = {
    "none": IterationOptions(),
    "http": IterationOptions(parse_http=True),
    "http+checksum": IterationOptions(parse_http=True, verify_digests=True),
}


@dataclass(frozen=True)
class BenchmarkResult:
    codec: CodecKind
    mode: str
    records: int
    elapsed: float

    @property
    def records_per_second(self) -> float:
        return self.records / self.elapsed

    def row(self) -> dict:
        d = asdict(self)
        d["codec"] = self.codec.value
        d["elapsed_s"] = d.pop("elapsed")
        d["records_per_s"] = self.records_per_second
        return d


def timed_pass(source, mode: str) -> tuple:
    """Iterate every record of ``source`` once; returns (records, seconds)."""
    opts = _MODE_OPTIONS[mode]
    n = 0
    t0 = time.perf_counter()
    for _ in ArchiveIterator(source, AUTO, opts):
        n += 1
    return n, time.perf_counter() - t0


def benchmark_file(path, modes=MODES, repeat: int = 5, warmup: int = 1, preload: bool = False) -> list:
    """Median-of-``repeat`` throughput for each mode after ``warmup`` untimed passes.

    Passes alternate between modes rather than running each mode's repeats
    back to back.
    """
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    data = None
    if preload:
        with open(path, "rb") as f:
            data = f.read()
        codec = detect_codec(data[:4])
    else:
        with open(path, "rb") as f:
            codec = detect_codec(f.read(4))

    def one(mode):
        if data is not None:
            return timed_pass(io.BytesIO(data), mode)
        with open(path, "rb") as f:
            return timed_pass(f, mode)

    for mode in modes:
        if mode not in _MODE_OPTIONS:
            raise ValueError(f"unknown mode {mode!r}")
    for _ in range(warmup):
        for mode in modes:
            one(mode)
    # round-robin so slow drift in machine speed hits every mode alike
    runs = {mode: [] for mode in modes}
    for _ in range(repeat):
        for mode in modes:
            runs[mode].append(one(mode))
    results = []
    for mode in modes:
        records = runs[mode][0][0]
        elapsed = statistics.median(t for _, t in runs[mode])
        results.append(BenchmarkResult(codec, mode, records, elapsed))
    return results
