"""Exit criteria for the package, one test per criterion.

Every test logs a PASS/FAIL line that pytest prints in an
"acceptance criteria" section at the end of the run.
"""
import csv
import statistics
import time

import numpy as np
import pytest

from seghull.bench import BenchConfig, parse_gen, run_bench
from seghull.dataio import (
    gen_circle,
    gen_uniform,
    read_mesh_vertices,
    read_points,
    write_points,
    write_synthetic_obj,
)
from seghull.errors import EmptyInput
from seghull.hull import preprocess, run
from seghull.oracle import gift_wrap, monotone_chain
from seghull.pointset import PointSet
from seghull.primitives import MulticoreBackend, SequentialBackend

SEEDS = range(1, 21)
SIZES = [10, 10**2, 10**3, 10**5, 10**6]


def _mesh(tmp_path, n, seed):
    path = tmp_path / f"mesh-{n}-{seed}.obj"
    write_synthetic_obj(path, n, seed)
    pts = read_mesh_vertices(path)
    path.unlink()
    return pts


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["uniform", "circle", "mesh"])
def test_1_oracle_equivalence(kind, tmp_path, record):
    gens = {"uniform": gen_uniform, "circle": gen_circle}
    bad = []
    cells = 0
    for n in SIZES:
        for seed in SEEDS:
            pts = _mesh(tmp_path, n, seed) if kind == "mesh" else gens[kind](n, seed)
            want = monotone_chain(pts).vertices
            for mode in (1, 2):
                cells += 1
                if not np.array_equal(run(pts, mode=mode).vertices, want):
                    bad.append((n, seed, mode))
    record(f"1 oracle equivalence [{kind}]", not bad,
           f"{cells - len(bad)}/{cells} (size, seed, mode) cells exact")
    assert not bad


def test_2_cross_oracle_agreement(record):
    rng = np.random.default_rng(500)
    bad = []
    for i in range(500):
        n = int(rng.integers(1, 201))
        if i % 2:
            pts = rng.random((n, 2))
        else:
            pts = rng.integers(-5, 6, (n, 2)).astype(float)
        if not np.array_equal(monotone_chain(pts).vertices, gift_wrap(pts).vertices):
            bad.append(i)
    record("2 cross-oracle agreement", not bad, f"{500 - len(bad)}/500 instances exact")
    assert not bad


def test_3_backend_determinism(record):
    rng = np.random.default_rng(3)
    seq = SequentialBackend()
    par = MulticoreBackend(workers=4, min_chunk=16)
    bad = []
    try:
        for i in range(1000):
            n = int(rng.integers(0, 10**4 + 1)) if i % 10 == 0 else int(rng.integers(0, 500))
            heads = (rng.random(n) < 0.2).astype(np.int8)
            if n:
                heads[0] = 1
            values = np.round(rng.normal(size=n), int(rng.integers(0, 3)))
            flags = rng.integers(0, 2, n)
            keys = seq.keys_from_heads(heads)
            outs = []
            for be in (seq, par):
                sm = be.segmented_argmax(keys, values)
                cols, kept = be.stable_partition_by_flag([values, keys], flags)
                blob = b"".join(a.tobytes() for a in (
                    be.inclusive_scan(heads), be.keys_from_heads(heads),
                    be.propagate_first_index(heads), *sm, *cols))
                mm = be.minmax_index(values) if n else None
                outs.append((blob, kept, mm))
            if outs[0] != outs[1]:
                bad.append(("primitive", i))
        for kind, gen in (("uniform", gen_uniform), ("circle", gen_circle)):
            for n, seed in ((10, 1), (1000, 2), (10**5, 3)):
                pts = gen(n, seed)
                for mode in (1, 2):
                    a = run(pts, mode=mode, backend=seq).vertices
                    b = run(pts, mode=mode, backend=par).vertices
                    if a.tobytes() != b.tobytes():
                        bad.append((kind, n, seed, mode))
    finally:
        par.close()
    record("3 backend determinism", not bad, "1000 primitive instances + 12 hulls bit-identical"
           if not bad else str(bad[:5]))
    assert not bad


def test_4_preprocessing_discard_fraction(record):
    fractions = []
    for n in (10**5, 10**6):
        for seed in range(1, 11):
            _, discarded = preprocess(gen_uniform(n, seed))
            fractions.append(discarded / n)
    ok = all(0.40 <= f <= 0.60 for f in fractions)
    outside = sum(not 0.40 <= f <= 0.60 for f in fractions)
    record("4 preprocessing discard fraction in [0.40, 0.60]", ok,
           f"min {min(fractions):.4f} max {max(fractions):.4f} "
           f"mean {np.mean(fractions):.4f}; {outside}/20 runs outside the band")
    assert ok


def test_5_degenerate_suite(record):
    checks = {}
    try:
        run(np.empty((0, 2)))
        checks["n=0"] = False
    except EmptyInput:
        checks["n=0"] = True
    for mode in (1, 2):
        checks[f"n=1 m{mode}"] = run([(2.5, -1)], mode=mode).points() == [(2.5, -1)]
        checks[f"n=2 m{mode}"] = run([(3, 4), (1, 9)], mode=mode).points() == [(1, 9), (3, 4)]
        checks[f"identical m{mode}"] = run([(7, 7)] * 50, mode=mode).points() == [(7, 7)]
        line = [(t, 2 * t + 1) for t in np.random.default_rng(1).permutation(40)]
        checks[f"collinear m{mode}"] = run(line, mode=mode).points() == [(0, 1), (39, 79)]
        vert = [(3, t) for t in range(10, 0, -1)]
        checks[f"vertical m{mode}"] = run(vert, mode=mode).points() == [(3, 1), (3, 10)]
        dup = [(0, 0), (4, 0), (4, 4), (0, 4)] * 5 + [(2, 2), (2, 0), (0, 0)]
        checks[f"duplicates m{mode}"] = run(dup, mode=mode).points() == [(0, 0), (4, 0), (4, 4), (0, 4)]
    failed = [k for k, v in checks.items() if not v]
    record("5 degenerate suite", not failed, f"{len(checks) - len(failed)}/{len(checks)} cases"
           + (f" failed: {failed}" if failed else ""))
    assert not failed


def test_6_hull_size_sanity(record):
    pts = gen_uniform(10**6, 1)
    r = run(pts)
    oracle = monotone_chain(pts)
    ok = 10 <= len(r) <= 100 and len(r) == len(oracle)
    record("6 uniform 1e6 hull size in [10, 100]", ok, f"hull size {len(r)} (oracle {len(oracle)})")
    assert ok


def _median_total(pts, mode, repeat=5):
    run(pts, mode=mode)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        run(pts, mode=mode)
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def test_7a_mode1_one_million_under_two_seconds(record):
    pts = gen_uniform(10**6, 7)
    t = time.perf_counter()
    run(pts, mode=1)
    elapsed = time.perf_counter() - t
    ok = elapsed < 2.0
    record("7a Mode 1 on 1e6 uniform < 2 s", ok, f"{elapsed * 1e3:.1f} ms")
    assert ok


def test_7b_mode1_not_slower_than_mode2(record):
    details = []
    ok = True
    for n in (10**6, 2 * 10**6):
        pts = gen_uniform(n, 11)
        m1, m2 = _median_total(pts, 1), _median_total(pts, 2)
        details.append(f"n={n}: mode1 {m1 * 1e3:.1f} ms, mode2 {m2 * 1e3:.1f} ms")
        ok &= m1 <= m2
    record("7b Mode 1 total <= Mode 2 total (n >= 1e6)", ok, "; ".join(details))
    assert ok


def test_7c_recurse_phase_dominates(tmp_path, record):
    out = tmp_path / "phases.csv"
    cfg = BenchConfig([parse_gen(f"uniform:1000000:{s}") for s in (1, 2, 3)],
                      modes=[1], repeat=5, csv=str(out))
    run_bench(cfg)
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert {"pre_ms", "split_ms", "recurse_ms"} <= set(rows[0])
    wins = 0
    details = []
    for row in rows:
        pre, split, rec = (float(row[k]) for k in ("pre_ms", "split_ms", "recurse_ms"))
        wins += rec > max(pre, split)
        details.append(f"{row['dataset']}: pre {pre:.1f} split {split:.1f} recurse {rec:.1f}")
    ok = wins >= 2
    record("7c recurse phase largest (2 of 3 seeds, Mode 1, 1e6)", ok,
           f"{wins}/3; " + "; ".join(details))
    assert ok


def test_8_io_round_trips(tmp_path, record):
    rng = np.random.default_rng(8)
    pts = PointSet(rng.normal(size=1000) * 1e5, rng.random(1000))
    write_points(pts, tmp_path / "p.bin", "binary")
    back = read_points(tmp_path / "p.bin", "binary")
    binary_ok = back.x.tobytes() == pts.x.tobytes() and back.y.tobytes() == pts.y.tobytes()

    obj = tmp_path / "m.obj"
    obj.write_text("v 1 2 3\nvn 0 0 1\nv 4 5 6\nf 1 2 1\n")
    obj_ok = read_mesh_vertices(obj).to_array().tolist() == [[1, 2], [4, 5]]
    ply = tmp_path / "m.ply"
    ply.write_text("ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\n"
                   "property float y\nproperty float z\nend_header\n1 2 3\n4 5 6\n")
    ply_ok = read_mesh_vertices(ply).to_array().tolist() == [[1, 2], [4, 5]]
    ok = binary_ok and obj_ok and ply_ok
    record("8 I/O round trips", ok, f"binary={binary_ok} obj={obj_ok} ply={ply_ok}")
    assert ok
