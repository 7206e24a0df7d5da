import numpy as np
import pytest
from hypothesis import strategies as st

from seghull.dataio import write_synthetic_obj
from seghull.primitives import MulticoreBackend


def turn(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_cross(p1, p2, q1, q2):
    """Proper or touching intersection of closed segments p1p2 and q1q2."""
    d1, d2 = turn(q1, q2, p1), turn(q1, q2, p2)
    d3, d4 = turn(p1, p2, q1), turn(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True

    def on(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on(q1, q2, p1)) or (d2 == 0 and on(q1, q2, p2))
            or (d3 == 0 and on(p1, p2, q1)) or (d4 == 0 and on(p1, p2, q2)))


def is_simple_polygon(pts):
    """Brute force: no two non-adjacent edges touch."""
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_cross(*edges[i], *edges[j]):
                return False
    return True


def assert_convex_ccw_hull(vertices, points):
    """Convexity, containment and conservation checks."""
    v = [tuple(p) for p in np.asarray(vertices).tolist()]
    pts = set(map(tuple, np.asarray(points).tolist()))
    assert set(v) <= pts
    assert len(set(v)) == len(v)
    k = len(v)
    if k >= 3:
        for i in range(k):
            assert turn(v[i], v[(i + 1) % k], v[(i + 2) % k]) > 0
        for p in pts:
            for i in range(k):
                assert turn(v[i], v[(i + 1) % k], p) >= 0
    assert v[0] == min(v)


@pytest.fixture(scope="session")
def par_backend():
    be = MulticoreBackend(workers=4, min_chunk=7)
    yield be
    be.close()


@pytest.fixture(scope="session")
def mesh_obj(tmp_path_factory):
    path = tmp_path_factory.mktemp("mesh") / "blob.obj"
    return write_synthetic_obj(path, 5000, 11)


# Multiples of 2**-10 below 2**10 in magnitude: every difference and product
# in an orientation test is exact, so hull equality is a fair question for
# any two correct algorithms.
coord = st.one_of(
    st.integers(-6, 6).map(float),
    st.integers(-2**20, 2**20).map(lambda k: k / 1024.0),
)
point_lists = st.lists(st.tuples(coord, coord), min_size=1, max_size=60)
grid_point_lists = st.lists(
    st.tuples(st.integers(-4, 4).map(float), st.integers(-4, 4).map(float)),
    min_size=1, max_size=60,
)


def pytest_configure(config):
    config._acceptance = []


@pytest.fixture
def record(request):
    """Log one acceptance criterion outcome for the end-of-run summary."""

    def _record(name, ok, detail=""):
        request.config._acceptance.append((name, bool(ok), detail))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance", [])
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, ok, detail in lines:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
