"""Command line front end: ``holz compress|decompress|stats|bench``."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from holz.container import METHOD_LABELS, compress_with_info, decompress, escape_zeros
from holz.errors import HolzError, UnsupportedFormatError
from holz.stats import dataset_stats
from holz.text import Text

BENCH_FIELDS = (
    "dataset",
    "method",
    "code",
    "input_bytes",
    "output_bytes",
    "ratio",
    "offset_bits",
    "length_bits",
    "wall_time_s",
)
CODE_LABELS = ("gamma", "delta")


def _err(msg):
    print(f"holz: {msg}", file=sys.stderr)


def _write_atomic(path, data):
    # temp file in the target directory, then rename: no partial output on failure
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_compress(args):
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        _err(f"cannot read {args.input}: {exc.strerror}")
        return 1
    blob, info = compress_with_info(raw, args.method, args.code, args.escape_zero)
    out = args.output or f"{args.input}.holz"
    try:
        _write_atomic(out, blob)
    except OSError as exc:
        _err(f"cannot write {out}: {exc.strerror}")
        return 1
    ratio = len(blob) / len(raw) if raw else 0.0
    print(f"z={info.z} bytes={len(blob)} ratio={ratio:.4f}", file=sys.stderr)
    return 0


def cmd_decompress(args):
    try:
        blob = Path(args.input).read_bytes()
    except OSError as exc:
        _err(f"cannot read {args.input}: {exc.strerror}")
        return 1
    try:
        raw = decompress(blob)
    except UnsupportedFormatError as exc:
        _err(str(exc))
        return 1
    except HolzError as exc:
        _err(f"corrupt input: {exc}")
        return 1
    out = args.output
    if out is None:
        out = args.input[: -len(".holz")] if args.input.endswith(".holz") else f"{args.input}.out"
    try:
        _write_atomic(out, raw)
    except OSError as exc:
        _err(f"cannot write {out}: {exc.strerror}")
        return 1
    return 0


def _dataset_files(path):
    p = Path(path)
    if p.is_dir():
        return sorted(f for f in p.iterdir() if f.is_file() and not f.name.startswith("."))
    return [p]


def cmd_stats(args):
    try:
        files = _dataset_files(args.input)
        rows = []
        for f in files:
            raw = f.read_bytes()
            if args.escape_zero:
                raw = escape_zeros(raw)
            rows.append(dataset_stats(Text.from_bytes(raw), f.name, args.max_k))
    except OSError as exc:
        _err(f"cannot read {args.input}: {exc.strerror}")
        return 1
    if rows:
        print(rows[0].header())
    for r in rows:
        print(r.csv_row())
    return 0


def _bench_file(job):
    path, methods, codes, escape, prefix = job
    raw = Path(path).read_bytes()
    if prefix:
        raw = raw[:prefix]
    rows = []
    for method in methods:
        for code in codes:
            t0 = time.perf_counter()
            blob, info = compress_with_info(raw, method, code, escape)
            elapsed = time.perf_counter() - t0
            if decompress(blob) != raw:
                return None, f"round trip failed: {Path(path).name} {method} {code}"
            rows.append(
                {
                    "dataset": Path(path).name,
                    "method": method,
                    "code": code,
                    "input_bytes": len(raw),
                    "output_bytes": len(blob),
                    "ratio": f"{len(blob) / len(raw):.6f}" if raw else "0",
                    "offset_bits": info.offset_bits,
                    "length_bits": info.length_bits,
                    "wall_time_s": f"{elapsed:.3f}",
                }
            )
    return rows, None


def cmd_bench(args):
    try:
        files = _dataset_files(args.input)
    except OSError as exc:
        _err(f"cannot read {args.input}: {exc.strerror}")
        return 1
    if not files or not all(f.exists() for f in files):
        _err(f"no datasets found at {args.input}")
        return 1
    jobs = [(str(f), args.methods, args.codes, args.escape_zero, args.prefix_bytes) for f in files]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_bench_file, jobs))
        else:
            results = [_bench_file(j) for j in jobs]
    except OSError as exc:
        _err(f"cannot read dataset: {exc.strerror}")
        return 1
    except HolzError as exc:
        _err(f"round trip failed: {exc}")
        return 1
    rows = []
    for got, problem in results:
        if problem:
            _err(problem)
            return 1
        rows.extend(got)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _csv_list(choices):
    def parse(value):
        items = [v.strip() for v in value.split(",") if v.strip()]
        bad = [v for v in items if v not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(f"choose from {', '.join(choices)}")
        return items

    return parse


def build_parser():
    parser = argparse.ArgumentParser(prog="holz", description="LZ compression with co-lexicographic offsets.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="write a .holz container")
    c.add_argument("input")
    c.add_argument("-o", "--output")
    c.add_argument("--method", choices=METHOD_LABELS, default="holz")
    c.add_argument("--code", choices=CODE_LABELS, default="delta")
    c.add_argument("--escape-zero", action="store_true", help="escape 0x00 bytes before parsing")
    c.set_defaults(func=cmd_compress)

    d = sub.add_parser("decompress", help="restore the original bytes")
    d.add_argument("input")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decompress)

    s = sub.add_parser("stats", help="print n, sigma, z, r, H0..Hk as CSV")
    s.add_argument("input", help="file or directory")
    s.add_argument("--max-k", type=int, default=4)
    s.add_argument("--escape-zero", action="store_true")
    s.set_defaults(func=cmd_stats)

    b = sub.add_parser("bench", help="compression ratios for methods x codes")
    b.add_argument("input", help="file or directory")
    b.add_argument("-o", "--output", help="CSV path (default: stdout)")
    b.add_argument("--methods", type=_csv_list(METHOD_LABELS), default=list(METHOD_LABELS))
    b.add_argument("--codes", type=_csv_list(CODE_LABELS), default=list(CODE_LABELS))
    b.add_argument("--escape-zero", action="store_true")
    b.add_argument("--prefix-bytes", type=int, default=0, help="trim each dataset to this many bytes")
    b.add_argument("--jobs", type=int, default=1, help="worker processes (one file per worker)")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "max_k", 0) < 0:
        _err("--max-k must be >= 0")
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
