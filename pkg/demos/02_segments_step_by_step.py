# One round of the segmented pipeline, printed array by array.
#
# Everything happens in place on a handful of row-aligned arrays: x, y,
# dist, head, keys, first_pts, flag. Subproblems are contiguous segments of
# those arrays, never separate lists.
#
#   python demos/02_segments_step_by_step.py

import numpy as np

from seghull.hull import (
    compact,
    compute_distances,
    find_farthest,
    first_split,
    mark_interior,
    split_segments,
)
from seghull.pointset import PointSet

np.set_printoptions(precision=2, suppress=True)

pts = PointSet.from_pairs([
    (0.0, 0.0), (1.0, -1.2), (2.0, -0.3), (3.0, -2.0), (4.0, -0.5),
    (5.0, 0.0), (4.0, 1.5), (3.0, 0.4), (2.0, 2.2), (1.0, 0.8),
])


def show(title, s):
    print(f"-- {title}")
    for name in ("x", "y", "dist", "head", "keys", "first_pts", "flag"):
        print(f"{name:>10}: {getattr(s, name)}")


# lower chain (x ascending) then upper chain (x descending): a CCW polygon
state = first_split(pts)
show("after first split", state)

rnd = 0
while True:
    state = compute_distances(state)
    far = find_farthest(state)
    if not (far.values > 0).any() and len(state) == len(far.keys):
        break
    rnd += 1
    print(f"\n== round {rnd}: farthest per segment (key, dist, index) ->", far.as_tuples())
    state = split_segments(state, far)
    show("heads promoted, keys rescanned", state)
    state = mark_interior(state)
    show("interior points flagged 0", state)
    state, removed = compact(state)
    show(f"compacted ({removed} removed)", state)

print("\nhull:", list(zip(state.x.tolist(), state.y.tolist())))
