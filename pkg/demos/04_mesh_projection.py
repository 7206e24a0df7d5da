# Hull of a mesh projected onto the XY plane.
#
# Pass an ASCII OBJ or PLY file to use a real model; without one a synthetic
# lumpy ellipsoid is written to a temporary file.
#
#   python demos/04_mesh_projection.py [model.obj]

import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from seghull import run
from seghull.dataio import read_mesh_vertices, write_points, write_synthetic_obj
from seghull.oracle import monotone_chain
from seghull.pointset import PointSet

if len(sys.argv) > 1:
    path = Path(sys.argv[1])
else:
    path = Path(tempfile.mkdtemp()) / "blob.obj"
    write_synthetic_obj(path, 300_000, seed=3)

t = time.perf_counter()
pts = read_mesh_vertices(path)
print(f"{len(pts)} vertices read from {path.name} in {time.perf_counter() - t:.2f} s")

for mode in (1, 2):
    r = run(pts, mode=mode)
    ok = np.array_equal(r.vertices, monotone_chain(pts).vertices)
    total = sum(r.phase_timings.values())
    print(f"mode {mode}: {len(r)} hull vertices, {total:.1f} ms, matches oracle: {ok}")

out = path.with_suffix(".hull.txt")
write_points(PointSet(r.x, r.y), out)
print("hull written to", out)
