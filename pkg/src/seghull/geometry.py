"""Orientation predicates shared by every pipeline stage.

All functions accept scalars or numpy arrays; arrays broadcast elementwise
and produce bit-identical results to the scalar path (plain IEEE multiply
and subtract, no fused operations).
"""
from typing import NamedTuple

import numpy as np


class Point(NamedTuple):
    x: float
    y: float


def cross_xy(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def cross(a, b, c):
    """Twice the signed area of triangle abc.

    Positive iff ``c`` lies strictly left of the directed line ``a -> b``.
    """
    return cross_xy(a[0], a[1], b[0], b[1], c[0], c[1])


def outward_distance_xy(fx, fy, lx, ly, px, py):
    return -cross_xy(fx, fy, lx, ly, px, py)


def outward_distance(first, last, p):
    """Signed measure of how far ``p`` lies right of ``first -> last``.

    Proportional to the Euclidean distance for a fixed line, so it is only
    meaningful for comparisons within one segment.
    """
    return -cross(first, last, p)


def _distinct_ring(corners):
    # collapse consecutive (and wrap-around) duplicates; None if < 3 distinct
    ring = []
    for c in corners:
        c = (float(c[0]), float(c[1]))
        if not ring or ring[-1] != c:
            ring.append(c)
    while len(ring) > 1 and ring[0] == ring[-1]:
        ring.pop()
    if len(set(ring)) < 3:
        return None
    return ring


def strictly_inside_convex(corners, p):
    """True iff ``p`` is strictly inside the CCW polygon ``corners``.

    Consecutive duplicate corners are skipped. With fewer than three distinct
    corners there is no interior and the answer is always False.
    """
    ring = _distinct_ring(corners)
    if ring is None:
        return False
    k = len(ring)
    return all(cross(ring[i], ring[(i + 1) % k], p) > 0 for i in range(k))


def strictly_inside_convex_xy(corners, px, py):
    """Vectorized :func:`strictly_inside_convex` over coordinate arrays."""
    ring = _distinct_ring(corners)
    if ring is None:
        return np.zeros(np.shape(px), dtype=bool)
    inside = np.ones(np.shape(px), dtype=bool)
    k = len(ring)
    for i in range(k):
        (ax, ay), (bx, by) = ring[i], ring[(i + 1) % k]
        inside &= cross_xy(ax, ay, bx, by, px, py) > 0
    return inside
