"""Command line entry point: ``warcflow <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 record not found, 4 bad offset.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bench import MODES, benchmark_file
from .codec import AUTO, CodecKind, detect_codec
from .errors import CorruptMember, MalformedRecord, WarcError
from .generate import generate_file
from .model import DigestStatus, RecordType, RecordTypeMask
from .parser import ArchiveIterator, IterationOptions, open_record_at
from .writer import WriteOptions, recompress

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_IO = 2
EXIT_NOT_FOUND = 3
EXIT_BAD_OFFSET = 4


class _Emitter:
    """Serializes report rows as TSV (with a header row) or JSON lines."""

    def __init__(self, columns, as_json=False, out=None):
        self.columns = columns
        self.as_json = as_json
        self.out = out or sys.stdout
        self._header_done = False

    def row(self, **values):
        if self.as_json:
            self.out.write(json.dumps(values) + "\n")
            return
        if not self._header_done:
            self.out.write("\t".join(self.columns) + "\n")
            self._header_done = True
        cells = []
        for c in self.columns:
            v = values.get(c, "")
            cells.append(f"{v:.3f}" if isinstance(v, float) else str(v))
        self.out.write("\t".join(cells) + "\n")


def _warn(msg):
    print(f"warcflow: {msg}", file=sys.stderr)


def _pool_map(func, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [func(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


# -- verify -----------------------------------------------------------------


def _verify_one(args):
    path, strict = args
    counts = {"path": path, "records": 0, "digest_pass": 0, "digest_fail": 0, "digest_absent": 0, "malformed": 0}
    try:
        with open(path, "rb") as f:
            it = ArchiveIterator(f, AUTO, IterationOptions(verify_digests=True, strict=strict))
            try:
                for rec in it:
                    counts["records"] += 1
                    report = rec.digest_status
                    if DigestStatus.failed in report:
                        counts["digest_fail"] += 1
                    elif DigestStatus.passed in report:
                        counts["digest_pass"] += 1
                    else:
                        counts["digest_absent"] += 1
            except WarcError as e:
                counts["malformed"] += 1
                counts["error"] = str(e)
            counts["malformed"] += it.stats.malformed
    except OSError as e:
        counts["io_error"] = str(e)
    return counts


def cmd_verify(args) -> int:
    results = _pool_map(_verify_one, [(p, args.strict) for p in args.paths], args.jobs)
    em = _Emitter(["path", "records", "digest_pass", "digest_fail", "digest_absent", "malformed"], args.json)
    status = EXIT_OK
    for r in results:
        if "io_error" in r:
            _warn(f"{r['path']}: {r['io_error']}")
            status = EXIT_IO
            continue
        if r["records"] == 0 and r["malformed"] == 0:
            _warn(f"{r['path']}: no records")
        if not args.quiet or r["digest_fail"] or r["malformed"]:
            em.row(**{k: v for k, v in r.items() if k != "error"})
        if "error" in r:
            _warn(f"{r['path']}: {r['error']}")
        if (r["digest_fail"] or r["malformed"]) and status == EXIT_OK:
            status = EXIT_VERIFY
    return status


# -- extract ----------------------------------------------------------------


def _emit_record(rec, headers_only, payload_only):
    out = sys.stdout.buffer
    if not payload_only:
        out.write(rec.header_block())
    if not headers_only:
        while True:
            chunk = rec.read(1 << 16)
            if not chunk:
                break
            out.write(chunk)
        if not payload_only:
            out.write(b"\r\n\r\n")
    out.flush()


def cmd_extract(args) -> int:
    try:
        f = open(args.path, "rb")
    except OSError as e:
        _warn(str(e))
        return EXIT_IO
    with f:
        kind = detect_codec(f.read(4))
        if args.offset is not None:
            try:
                rec = open_record_at(f, args.offset, kind)
            except (CorruptMember, MalformedRecord) as e:
                _warn(f"bad offset: {e}")
                return EXIT_BAD_OFFSET
            _emit_record(rec, args.headers_only, args.payload_only)
            return EXIT_OK
        f.seek(0)
        wanted = args.record_id.encode()
        if not wanted.startswith(b"<"):
            wanted = b"<" + wanted + b">"
        for rec in ArchiveIterator(f, kind):
            if rec.record_id == wanted:
                _emit_record(rec, args.headers_only, args.payload_only)
                return EXIT_OK
    _warn(f"record {args.record_id} not found")
    return EXIT_NOT_FOUND


# -- recompress ---------------------------------------------------------------


def cmd_recompress(args) -> int:
    src, dst = args.in_path, args.out_path
    if os.path.realpath(src) == os.path.realpath(dst) or (
        os.path.exists(dst) and os.path.exists(src) and os.path.samefile(src, dst)
    ):
        _warn("refusing to overwrite the input file")
        return EXIT_IO
    try:
        target = WriteOptions(codec=args.codec, level=args.level)
    except ValueError as e:
        _warn(str(e))
        return EXIT_IO
    try:
        with open(src, "rb") as fin, open(dst, "wb") as fout:
            report = recompress(fin, fout, target, strict=args.strict)
    except OSError as e:
        _warn(str(e))
        return EXIT_IO
    except WarcError as e:
        _warn(str(e))
        return EXIT_VERIFY
    print(report.summary())
    return EXIT_OK


# -- stats ------------------------------------------------------------------


def _stats_one(args):
    path, bits = args
    out = {"path": path, "types": {}, "members": 0}
    try:
        with open(path, "rb") as f:
            it = ArchiveIterator(f, AUTO, IterationOptions(filter=RecordTypeMask(bits)))
            for rec in it:
                n, b = out["types"].get(rec.record_type.value, (0, 0))
                out["types"][rec.record_type.value] = (n + 1, b + rec.content_length)
            out["members"] = it.stream.members_seen
            out["malformed"] = it.stats.malformed
    except OSError as e:
        out["io_error"] = str(e)
    except WarcError as e:
        out["io_error"] = str(e)
    return out


def cmd_stats(args) -> int:
    try:
        mask = RecordTypeMask.parse(args.filter) if args.filter is not None else RecordTypeMask.full()
    except ValueError as e:
        _warn(str(e))
        return EXIT_IO
    results = _pool_map(_stats_one, [(p, mask.bits) for p in args.paths], args.jobs)
    em = _Emitter(["path", "type", "records", "content_bytes", "members"], args.json)
    status = EXIT_OK
    for r in results:
        if "io_error" in r:
            _warn(f"{r['path']}: {r['io_error']}")
            status = EXIT_IO
            continue
        total_n = total_b = 0
        for t in RecordType:
            if t.value in r["types"]:
                n, b = r["types"][t.value]
                total_n += n
                total_b += b
                em.row(path=r["path"], type=t.value, records=n, content_bytes=b)
        em.row(path=r["path"], type="total", records=total_n, content_bytes=total_b, members=r["members"])
    return status


# -- benchmark --------------------------------------------------------------


def cmd_benchmark(args) -> int:
    modes = []
    for m in args.mode or MODES:
        modes.extend(x for x in m.split(",") if x)
    em = _Emitter(["codec", "mode", "records", "elapsed_s", "records_per_s"], args.json)
    for path in args.paths:
        try:
            results = benchmark_file(path, modes, args.repeat, args.warmup, args.preload)
        except OSError as e:
            _warn(str(e))
            return EXIT_IO
        for r in results:
            row = r.row()
            em.row(codec=row["codec"], mode=row["mode"], records=row["records"],
                   elapsed_s=row["elapsed_s"], records_per_s=row["records_per_s"])
    return EXIT_OK


# -- generate ---------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        geoms = generate_file(
            args.out_path, args.records, args.codec, args.seed,
            digests=not args.no_digests, min_bytes=args.min_bytes,
            median_body=args.median_body, level=args.level,
        )
    except OSError as e:
        _warn(str(e))
        return EXIT_IO
    size = os.path.getsize(args.out_path)
    print(f"records={len(geoms)} bytes={size} codec={CodecKind(args.codec).value} seed={args.seed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="warcflow", description="Fast WARC reading, verification and transcoding.")
    sub = p.add_subparsers(dest="command", required=True)
    codecs = [k.value for k in CodecKind]

    s = sub.add_parser("verify", help="check block and payload digests")
    s.add_argument("paths", nargs="+")
    s.add_argument("--strict", action="store_true")
    s.add_argument("--quiet", action="store_true", help="only report files with problems")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("extract", help="print one record, uncompressed")
    s.add_argument("path")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--offset", type=int)
    g.add_argument("--record-id")
    g2 = s.add_mutually_exclusive_group()
    g2.add_argument("--headers-only", action="store_true")
    g2.add_argument("--payload-only", action="store_true")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("recompress", help="transcode to another codec, one member per record")
    s.add_argument("in_path")
    s.add_argument("out_path")
    s.add_argument("--codec", choices=codecs, default="lz4")
    s.add_argument("--level", type=int)
    s.add_argument("--strict", action="store_true")
    s.set_defaults(func=cmd_recompress)

    s = sub.add_parser("stats", help="per-type record counts from a header-only pass")
    s.add_argument("paths", nargs="+")
    s.add_argument("--filter", help="comma-separated record types")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("benchmark", help="records/s per parse mode")
    s.add_argument("paths", nargs="+")
    s.add_argument("--mode", action="append", help=f"one of {', '.join(MODES)}; repeatable")
    s.add_argument("--repeat", type=int, default=5)
    s.add_argument("--warmup", type=int, default=1)
    s.add_argument("--preload", action="store_true", help="load the file into memory first")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_benchmark)

    s = sub.add_parser("generate", help="write a deterministic synthetic corpus")
    s.add_argument("out_path")
    s.add_argument("--records", type=int)
    s.add_argument("--min-bytes", type=int)
    s.add_argument("--codec", choices=codecs, default="gzip")
    s.add_argument("--level", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--median-body", type=int, default=12_000)
    s.add_argument("--no-digests", action="store_true")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_IO if e.code else EXIT_OK
    if args.command == "generate" and args.records is None and args.min_bytes is None:
        args.records = 1000
    if args.command == "benchmark":
        for m in args.mode or []:
            for x in m.split(","):
                if x and x not in MODES:
                    _warn(f"unknown mode {x!r}")
                    return EXIT_IO
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
