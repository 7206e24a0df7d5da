"""Reference convex hulls used to check the segmented pipeline.

Nothing here imports from the hull or geometry modules; the orientation test
is written out again on purpose. Both functions exclude collinear boundary
points and return vertices CCW from the leftmost (then lowest) point, with the
same conventions for degenerate inputs as :func:`seghull.hull.run`.
"""
from dataclasses import dataclass

import numba
import numpy as np

from .errors import EmptyInput, InputTooLarge
from .pointset import PointSet

GIFT_WRAP_MAX = 1000


@dataclass
class OracleHull:
    vertices: np.ndarray

    def __len__(self):
        return len(self.vertices)


def _as_xy(points):
    if not isinstance(points, PointSet):
        points = PointSet.from_pairs(points)
    if len(points) == 0:
        raise EmptyInput("convex hull of an empty point set")
    return points.check_finite()


@numba.njit(cache=True)
def _chain(xs, ys):
    n = len(xs)
    hull = np.empty(2 * n, dtype=np.int64)
    k = 0
    for i in range(n):
        while k >= 2:
            a, b = hull[k - 2], hull[k - 1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0:
                k -= 1
            else:
                break
        hull[k] = i
        k += 1
    floor = k + 1
    for i in range(n - 2, -1, -1):
        while k >= floor:
            a, b = hull[k - 2], hull[k - 1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0:
                k -= 1
            else:
                break
        hull[k] = i
        k += 1
    return hull[: k - 1]


def monotone_chain(points):
    """Andrew's monotone chain with strict left turns."""
    pts = _as_xy(points)
    order = np.lexsort((pts.y, pts.x))
    xs, ys = pts.x[order], pts.y[order]
    if xs[0] == xs[-1] and ys[0] == ys[-1]:
        return OracleHull(np.array([[xs[0], ys[0]]]))
    idx = _chain(xs, ys)
    return OracleHull(np.column_stack((xs[idx], ys[idx])))


def gift_wrap(points):
    """Jarvis march; quadratic, so limited to GIFT_WRAP_MAX points."""
    pts = _as_xy(points)
    n = len(pts)
    if n > GIFT_WRAP_MAX:
        raise InputTooLarge(f"gift_wrap is capped at {GIFT_WRAP_MAX} points, got {n}")
    P = list(zip(pts.x.tolist(), pts.y.tolist()))
    start = min(P)
    if start == max(P):
        return OracleHull(np.array([start]))

    def turn(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def d2(a, b):
        return (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2

    hull = [start]
    cur = start
    for _ in range(n + 1):
        cand = None
        for r in P:
            if r == cur:
                continue
            if cand is None:
                cand = r
                continue
            t = turn(cur, cand, r)
            if t < 0 or (t == 0 and d2(cur, r) > d2(cur, cand)):
                cand = r
        if cand == start:
            return OracleHull(np.array(hull))
        hull.append(cand)
        cur = cand
    raise RuntimeError("gift wrapping did not close the polygon")
