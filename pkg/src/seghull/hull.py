"""Segment-based QuickHull.

The working set lives in one set of row-aligned arrays (:class:`HullState`).
After the first split the lower chain (sorted by x ascending) is followed by
the upper chain (sorted by x descending), so the array reads as a CCW polygon
that wraps back to the leftmost point. Every subproblem is a segment of that
array: it runs from its head point to the head of the next segment, which
doubles as its last point. Each round finds the farthest point of every
segment, promotes it to a head, and compacts away everything that is no longer
strictly outside its segment's line. When no segment has anything left
outside, the surviving heads are the hull.
"""
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateInput, EmptyInput, InternalError
from .geometry import Point, cross_xy, outward_distance_xy, strictly_inside_convex_xy
from .pointset import PointSet
from .primitives import get_backend

FLAG = np.int8


@dataclass(frozen=True)
class HullState:
    x: np.ndarray
    y: np.ndarray
    dist: np.ndarray
    head: np.ndarray
    keys: np.ndarray
    first_pts: np.ndarray
    flag: np.ndarray

    def __len__(self):
        return len(self.x)

    @property
    def segments(self):
        return int(self.keys[-1]) + 1 if len(self.keys) else 0

    def check(self, backend=None):
        """Raise InternalError if any structural invariant is broken."""
        be = get_backend(backend)
        n = len(self.x)
        for name in ("y", "dist", "head", "keys", "first_pts", "flag"):
            if len(getattr(self, name)) != n:
                raise InternalError(f"{name} has length {len(getattr(self, name))}, expected {n}")
        if n == 0:
            return
        if self.head[0] != 1:
            raise InternalError("head[0] must be 1")
        if not np.array_equal(self.keys, be.keys_from_heads(self.head)):
            raise InternalError("keys out of sync with head flags")
        if not np.array_equal(self.first_pts, be.propagate_first_index(self.head)):
            raise InternalError("first_pts out of sync with head flags")
        # the rightmost point (ties: highest y) separates the two chains
        right = np.flatnonzero(self.x == self.x.max())
        r = int(right[np.argmax(self.y[right])])
        lx, ly = self.x[:r], self.y[:r]
        ux, uy = self.x[r:], self.y[r:]
        if np.any(np.diff(lx) < 0) or np.any((np.diff(lx) == 0) & (np.diff(ly) < 0)):
            raise InternalError("lower chain not sorted by x ascending")
        if np.any(np.diff(ux) > 0) or np.any((np.diff(ux) == 0) & (np.diff(uy) > 0)):
            raise InternalError("upper chain not sorted by x descending")
        if r > 0 and self.head[r] != 1:
            raise InternalError("rightmost point is not a segment head")


@dataclass(frozen=True)
class SegmentStats:
    iteration: int
    segments: int
    points_remaining: int
    points_removed: int


@dataclass
class HullResult:
    """Hull vertices in CCW order starting at the leftmost (then lowest) one."""

    x: np.ndarray
    y: np.ndarray
    stats: list = field(default_factory=list)
    phase_timings: dict = field(default_factory=dict)
    input_size: int = 0
    discarded: int = 0

    @property
    def vertices(self):
        return np.column_stack((self.x, self.y))

    def points(self):
        return [Point(float(a), float(b)) for a, b in zip(self.x, self.y)]

    def __len__(self):
        return len(self.x)


def _lexmin_lexmax(x, y, be):
    # leftmost with lowest y, rightmost with highest y: both are true hull
    # vertices, unlike an arbitrary point among tied extremes
    i_min, i_max = be.minmax_index(x)
    left = np.flatnonzero(x == x[i_min])
    right = np.flatnonzero(x == x[i_max])
    i0 = int(left[np.argmin(y[left])])
    ir = int(right[np.argmax(y[right])])
    return i0, ir


def _quad_corners(x, y, be):
    # leftmost, bottommost, rightmost, topmost; a tie on one coordinate goes
    # toward the next corner in CCW order, which keeps the quadrilateral as
    # large as possible (a square's four corners, not a triangle)
    i_left, i_right = be.minmax_index(x)
    i_bottom, i_top = be.minmax_index(y)

    def pick(i, axis, other, want_max):
        tied = np.flatnonzero(axis == axis[i])
        vals = other[tied]
        return int(tied[np.argmax(vals) if want_max else np.argmin(vals)])

    return (
        pick(i_left, x, y, False),
        pick(i_bottom, y, x, True),
        pick(i_right, x, y, True),
        pick(i_top, y, x, False),
    )


def preprocess(points, backend=None):
    """Drop every point strictly inside the quadrilateral spanned by the
    leftmost, bottommost, rightmost and topmost points.

    Returns the filtered :class:`PointSet` (original order kept) and the number
    of points discarded.
    """
    be = get_backend(backend)
    x, y = points.x, points.y
    if len(x) == 0:
        raise EmptyInput("cannot preprocess an empty point set")
    corners = [(x[i], y[i]) for i in _quad_corners(x, y, be)]
    flag = (~strictly_inside_convex_xy(corners, x, y)).astype(FLAG)
    (fx, fy), kept = be.stable_partition_by_flag([x, y], flag)
    return PointSet(fx[:kept], fy[:kept]), len(x) - kept


def first_split(points, backend=None):
    """Split into lower and upper chains and build the initial two-segment
    state."""
    return _split(points, get_backend(backend))[0]


def _split(points, be):
    # also reports whether every point lies on the leftmost-rightmost line,
    # which run() needs and which falls out of the side test for free
    x, y = points.x, points.y
    n = len(x)
    if n == 0:
        raise EmptyInput("cannot split an empty point set")
    i0, ir = _lexmin_lexmax(x, y, be)
    if x[i0] == x[ir] and y[i0] == y[ir]:
        raise DegenerateInput("first_split needs at least 2 distinct points")
    side = cross_xy(x[i0], y[i0], x[ir], y[ir], x, y)
    collinear = not np.any(side)
    lower = (side < 0).astype(FLAG)
    lower[i0] = 1
    lower[ir] = 0
    (px, py), n_lower = be.stable_partition_by_flag([x, y], lower)
    lo = be.argsort_xy(px[:n_lower], py[:n_lower])
    up = be.argsort_xy(px[n_lower:], py[n_lower:], descending=True) + n_lower
    order = np.concatenate((lo, up))
    sx, sy = be.gather(px, order), be.gather(py, order)
    head = np.zeros(n, dtype=FLAG)
    head[0] = 1
    head[n_lower] = 1
    state = HullState(
        x=sx,
        y=sy,
        dist=np.zeros(n),
        head=head,
        keys=be.keys_from_heads(head),
        first_pts=be.propagate_first_index(head),
        flag=np.ones(n, dtype=FLAG),
    )
    return state, collinear


def compute_distances(state, backend=None):
    """Outward distance of every point from its segment's first->last line.

    The last point of a segment is the head of the next one; the final
    segment closes back on point 0.
    """
    be = get_backend(backend)
    n = len(state)
    if n == 0:
        return state
    nxt = np.append(np.flatnonzero(state.head)[1:], 0)
    last = be.gather(nxt, state.keys)
    first = state.first_pts
    dist = outward_distance_xy(
        be.gather(state.x, first), be.gather(state.y, first),
        be.gather(state.x, last), be.gather(state.y, last),
        state.x, state.y,
    )
    return replace(state, dist=dist)


def find_farthest(state, backend=None):
    """Per-segment (key, max distance, index); a segment is splittable iff
    its max distance is strictly positive."""
    be = get_backend(backend)
    return be.segmented_argmax(state.keys, state.dist)


def split_segments(state, farthest, backend=None):
    be = get_backend(backend)
    promote = farthest.indices[farthest.values > 0]
    if len(promote) == 0:
        return state
    head = state.head.copy()
    head[promote] = 1
    return replace(
        state,
        head=head,
        keys=be.keys_from_heads(head),
        first_pts=be.propagate_first_index(head),
    )


def mark_interior(state, backend=None):
    """Flag 1 for heads and for points strictly outside their (new)
    segment's line; 0 for everything inside or on it."""
    state = compute_distances(state, backend)
    flag = ((state.head != 0) | (state.dist > 0)).astype(FLAG)
    return replace(state, flag=flag)


def compact(state, backend=None):
    """Remove flagged-out points. Returns the new state and removal count."""
    be = get_backend(backend)
    n = len(state)
    cols = [state.x, state.y, state.dist, state.head, state.keys, state.flag]
    (x, y, dist, head, keys, flag), kept = be.stable_partition_by_flag(cols, state.flag)
    if kept == n:
        return state, 0
    head, keys = head[:kept], keys[:kept]
    state = HullState(
        x=x[:kept],
        y=y[:kept],
        dist=dist[:kept],
        head=head,
        keys=keys,
        first_pts=be.propagate_first_index(head),
        flag=flag[:kept],
    )
    return state, n - kept


def run(points, mode=1, backend=None, check=False):
    """Convex hull of ``points``.

    ``mode`` 1 runs the quadrilateral prefilter first, mode 2 skips it.
    With ``check=True`` the state invariants are verified after every round
    (slow; meant for tests).
    """
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode!r}")
    be = get_backend(backend)
    if not isinstance(points, PointSet):
        points = PointSet.from_pairs(points)
    n_input = len(points)
    if n_input == 0:
        raise EmptyInput("convex hull of an empty point set")
    points.check_finite()
    timings = {"pre": 0.0, "split": 0.0, "recurse": 0.0}

    x, y = points.x, points.y
    t = time.perf_counter()
    i0, ir = _lexmin_lexmax(x, y, be)
    if x[i0] == x[ir] and y[i0] == y[ir]:
        timings["split"] = (time.perf_counter() - t) * 1e3
        return HullResult(x[[i0]], y[[i0]], phase_timings=timings, input_size=n_input)
    t_check = time.perf_counter() - t

    # the prefilter only removes points strictly inside a quadrilateral, so
    # a collinear input passes through untouched and the collinearity test
    # can wait for the split
    discarded = 0
    if mode == 1:
        t = time.perf_counter()
        points, discarded = preprocess(points, be)
        timings["pre"] = (time.perf_counter() - t) * 1e3

    t = time.perf_counter()
    state, collinear = _split(points, be)
    timings["split"] = (time.perf_counter() - t + t_check) * 1e3
    if collinear:
        return HullResult(
            x[[i0, ir]], y[[i0, ir]], phase_timings=timings, input_size=n_input
        )
    if check:
        state.check(be)

    t = time.perf_counter()
    stats = []
    cap = len(state)
    rounds = 0
    while True:
        state = compute_distances(state, be)
        farthest = find_farthest(state, be)
        segments = len(farthest.keys)
        if not np.any(farthest.values > 0) and len(state) == segments:
            break
        rounds += 1
        if rounds > cap:
            raise InternalError(f"no convergence after {cap} rounds")
        state = split_segments(state, farthest, be)
        state = mark_interior(state, be)
        state, removed = compact(state, be)
        if check:
            state.check(be)
        stats.append(SegmentStats(rounds, state.segments, len(state), removed))
    timings["recurse"] = (time.perf_counter() - t) * 1e3

    return HullResult(
        state.x,
        state.y,
        stats=stats,
        phase_timings=timings,
        input_size=n_input,
        discarded=discarded,
    )


def convex_hull(points, mode=1, backend=None):
    """Hull vertices as an (k, 2) array; shorthand for ``run(...).vertices``."""
    return run(points, mode=mode, backend=backend).vertices


__all__ = [
    "HullState",
    "HullResult",
    "SegmentStats",
    "preprocess",
    "first_split",
    "compute_distances",
    "find_farthest",
    "split_segments",
    "mark_interior",
    "compact",
    "run",
    "convex_hull",
]
