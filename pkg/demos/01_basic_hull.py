# Convex hull of a random point cloud, checked against the monotone chain.
#
#   python demos/01_basic_hull.py

import numpy as np

from seghull import run
from seghull.dataio import gen_uniform
from seghull.oracle import monotone_chain

pts = gen_uniform(100_000, seed=42)

result = run(pts, mode=1)          # mode 1: quadrilateral prefilter on
print("hull vertices:", len(result))
print(result.vertices[:5])         # CCW, starting at the leftmost point

# the reference hull is computed by completely separate code
same = np.array_equal(result.vertices, monotone_chain(pts).vertices)
print("matches monotone chain:", same)

# how the working set shrank, round by round
print("prefilter dropped", result.discarded, "points")
for s in result.stats:
    print(f"  round {s.iteration}: {s.segments:3d} segments, "
          f"{s.points_remaining:6d} points left, {s.points_removed:6d} removed")

print("phase timings (ms):", {k: round(v, 2) for k, v in result.phase_timings.items()})
