"""Benchmark harness: datasets x modes, per-phase timings, CSV output.

The CPU baseline is this package's own monotone chain
(:func:`seghull.oracle.monotone_chain`), not Qhull, so the speedup column
compares two CPU implementations and says nothing about GPU numbers.
"""
from __future__ import annotations

import argparse
import csv
import logging
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable

import numpy as np

from . import dataio
from .errors import HullError
from .hull import run
from .oracle import monotone_chain
from .pointset import PointSet
from .primitives import get_backend

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "dataset", "size", "mode", "total_ms", "pre_ms", "split_ms", "recurse_ms",
    "baseline_ms", "speedup", "hull_size", "verified",
]


@dataclass
class BenchRecord:
    """One (dataset, mode) cell; all durations are medians in milliseconds."""

    dataset: str
    size: int
    mode: int
    total_ms: float
    pre_ms: float
    split_ms: float
    recurse_ms: float
    baseline_ms: float
    speedup: float
    hull_size: int
    verified: bool


@dataclass
class Dataset:
    label: str
    load: Callable[[], PointSet]


@dataclass
class BenchConfig:
    datasets: list
    modes: list = field(default_factory=lambda: [1, 2])
    backend: str = "seq"
    repeat: int = 3
    verify: bool = False
    csv: str | None = None
    emit_hull: str | None = None


class VerificationError(HullError):
    pass


def parse_gen(spec):
    """``uniform:N:SEED`` or ``circle:N:SEED`` -> :class:`Dataset`."""
    try:
        kind, n, seed = spec.split(":")
        n, seed = int(float(n)), int(seed)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected KIND:N:SEED, got {spec!r}"
        ) from None
    gens = {"uniform": dataio.gen_uniform, "circle": dataio.gen_circle}
    if kind not in gens or n < 0:
        raise argparse.ArgumentTypeError(f"bad generator spec {spec!r}")
    return Dataset(f"{kind}/seed={seed}", lambda: gens[kind](n, seed))


def input_dataset(path, mesh=False, format="text"):
    if mesh:
        return Dataset(Path(path).name, lambda: dataio.read_mesh_vertices(path))
    return Dataset(Path(path).name, lambda: dataio.read_points(path, format))


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t) * 1e3


def bench_cell(points, mode, backend, repeat):
    """Warm-up once, then ``repeat`` timed runs; returns (last result, medians)."""
    run(points, mode=mode, backend=backend)
    totals, pre, split, rec = [], [], [], []
    result = None
    for _ in range(max(1, repeat)):
        result, ms = _timed(lambda: run(points, mode=mode, backend=backend))
        totals.append(ms)
        pre.append(result.phase_timings["pre"])
        split.append(result.phase_timings["split"])
        rec.append(result.phase_timings["recurse"])
    med = statistics.median
    return result, {
        "total_ms": med(totals),
        "pre_ms": med(pre),
        "split_ms": med(split),
        "recurse_ms": med(rec),
    }


def time_baseline(points, repeat):
    monotone_chain(points)
    times = []
    hull = None
    for _ in range(max(1, repeat)):
        hull, ms = _timed(lambda: monotone_chain(points))
        times.append(ms)
    return hull, statistics.median(times)


def run_bench(config):
    """Run every (dataset, mode) cell and return the records.

    Writes the CSV if ``config.csv`` is set. With ``config.verify`` a hull
    that differs from the oracle raises :class:`VerificationError` after the
    CSV is written.
    """
    backend = get_backend(config.backend)
    records = []
    mismatches = []
    try:
        for k, ds in enumerate(config.datasets):
            points = ds.load()
            oracle, baseline_ms = time_baseline(points, config.repeat)
            for mode in config.modes:
                result, med = bench_cell(points, mode, backend, config.repeat)
                ok = bool(np.array_equal(result.vertices, oracle.vertices))
                if not ok:
                    mismatches.append((ds.label, mode))
                rec = BenchRecord(
                    dataset=ds.label,
                    size=len(points),
                    mode=mode,
                    baseline_ms=baseline_ms,
                    speedup=baseline_ms / med["total_ms"] if med["total_ms"] > 0 else float("inf"),
                    hull_size=len(result),
                    verified=ok,
                    **med,
                )
                logger.info("%s", rec)
                records.append(rec)
            if config.emit_hull:
                dataio.write_points(
                    PointSet(result.x, result.y),
                    _emit_path(config.emit_hull, k, len(config.datasets)),
                )
    finally:
        backend.close()
    if config.csv:
        write_csv(records, config.csv)
    if config.verify and mismatches:
        raise VerificationError(f"hull differs from oracle for {mismatches}")
    return records


def _emit_path(path, k, total):
    if total == 1:
        return path
    p = Path(path)
    return str(p.with_name(f"{p.stem}-{k}{p.suffix}"))


def write_csv(records, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        w.writeheader()
        for r in records:
            row = asdict(r)
            for name in ("total_ms", "pre_ms", "split_ms", "recurse_ms", "baseline_ms"):
                row[name] = f"{row[name]:.3f}"
            row["speedup"] = f"{row['speedup']:.3f}"
            row["verified"] = str(row["verified"]).lower()
            w.writerow(row)


def format_table(records):
    cols = [f.name for f in fields(BenchRecord)]
    rows = [[_fmt(getattr(r, c)) for c in cols] for r in records]
    widths = [max(len(c), *(len(row[i]) for row in rows)) if rows else len(c)
              for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.2f}"
    return str(v)


def _modes(text):
    try:
        modes = [int(m) for m in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad mode {text!r}") from None
    if any(m not in (1, 2) for m in modes):
        raise argparse.ArgumentTypeError("modes are 1 (prefilter) or 2 (none)")
    return modes


def build_parser():
    p = argparse.ArgumentParser(
        prog="hullbench",
        description="Time the segmented QuickHull against a monotone-chain baseline.",
    )
    p.add_argument("--gen", action="append", type=parse_gen, default=[],
                   metavar="KIND:N:SEED", help="uniform:N:SEED or circle:N:SEED (repeatable)")
    p.add_argument("--input", action="append", default=[], metavar="PATH",
                   help="point file (repeatable)")
    p.add_argument("--mesh", action="store_true",
                   help="treat --input files as ASCII OBJ/PLY meshes")
    p.add_argument("--binary", action="store_true",
                   help="--input point files use the binary PTS2 format")
    p.add_argument("--mode", action="append", type=_modes, metavar="1|2",
                   help="1 = with prefilter, 2 = without; repeatable or 1,2 (default both)")
    p.add_argument("--backend", choices=["seq", "par"], default="seq")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--csv", metavar="OUT.csv")
    p.add_argument("--verify", action="store_true",
                   help="exit 1 if any hull differs from the oracle")
    p.add_argument("--emit-hull", metavar="PATH",
                   help="write hull vertices in the text point format")
    p.add_argument("-q", "--quiet", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    datasets = list(args.gen)
    fmt = "binary" if args.binary else "text"
    datasets += [input_dataset(p, mesh=args.mesh, format=fmt) for p in args.input]
    if not datasets:
        parser.error("need at least one --gen or --input")
    if args.repeat < 1:
        parser.error("--repeat must be >= 1")
    modes = sorted({m for group in (args.mode or [[1, 2]]) for m in group})
    config = BenchConfig(
        datasets=datasets,
        modes=modes,
        backend=args.backend,
        repeat=args.repeat,
        verify=args.verify,
        csv=args.csv,
        emit_hull=args.emit_hull,
    )
    try:
        records = run_bench(config)
    except VerificationError as exc:
        print(f"hullbench: verification failed: {exc}", file=sys.stderr)
        return 1
    except (OSError, HullError) as exc:
        print(f"hullbench: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        print(format_table(records))
    return 0


if __name__ == "__main__":
    sys.exit(main())
