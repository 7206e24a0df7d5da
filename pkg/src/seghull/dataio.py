"""Point generators, point files and mesh-vertex ingestion.

Random generators use numpy's PCG64 bit generator seeded with the integer
seed (``numpy.random.Generator(PCG64(seed))``). Uniform sets draw ``2 * n``
doubles with ``Generator.random`` in one call and interleave them as
``x0, y0, x1, y1, ...``; circle sets draw ``n`` doubles the same way and map
each to the angle ``2 * pi * u``.

Point files come in two formats:

text
    one ``x y`` pair per line, whitespace separated; blank lines and lines
    starting with ``#`` are skipped. Values are written with 17 significant
    digits.
binary
    the 4 magic bytes ``PTS2``, a little-endian uint64 count, then ``count``
    pairs of little-endian float64 ``(x, y)``.
"""
import math
import struct

import numpy as np

from .errors import NonFiniteInput, ParseError, UnsupportedFormat
from .pointset import PointSet

MAGIC = b"PTS2"
_HEADER = struct.Struct("<4sQ")


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def gen_uniform(n, seed):
    """``n`` points uniform on the unit square [0, 1)^2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    u = _rng(seed).random(2 * n).reshape(n, 2)
    return PointSet(u[:, 0], u[:, 1])


def gen_circle(n, seed):
    """``n`` points on the unit circle at uniformly random angles."""
    if n < 0:
        raise ValueError("n must be non-negative")
    theta = 2.0 * np.pi * _rng(seed).random(n)
    return PointSet(np.cos(theta), np.sin(theta))


def _finite_or_raise(points, where):
    try:
        points.check_finite()
    except NonFiniteInput as exc:
        raise NonFiniteInput(f"{where}: {exc}") from None
    return points


def read_points(path, format="text"):
    if format == "text":
        return _read_text(path)
    if format == "binary":
        return _read_binary(path)
    raise ValueError(f"unknown point format {format!r}")


def _read_text(path):
    xs, ys = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 2:
                raise ParseError(f"expected 2 values, got {len(parts)}", line=lineno)
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError:
                raise ParseError(f"not a number: {s!r}", line=lineno) from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise NonFiniteInput(f"{path}: non-finite value on line {lineno}")
            xs.append(x)
            ys.append(y)
    return PointSet(np.array(xs, dtype=np.float64), np.array(ys, dtype=np.float64))


def _read_binary(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise ParseError("truncated header", offset=len(data))
    magic, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ParseError(f"bad magic {magic!r}", offset=0)
    need = _HEADER.size + 16 * count
    if len(data) != need:
        raise ParseError(f"expected {need} bytes for {count} points, got {len(data)}",
                         offset=min(len(data), need))
    xy = np.frombuffer(data, dtype="<f8", count=2 * count, offset=_HEADER.size)
    xy = xy.reshape(count, 2).astype(np.float64)
    return _finite_or_raise(PointSet(xy[:, 0], xy[:, 1]), path)


def write_points(points, path, format="text"):
    if format == "text":
        with open(path, "w", encoding="utf-8") as fh:
            for x, y in zip(points.x.tolist(), points.y.tolist()):
                fh.write(f"{x:.17g} {y:.17g}\n")
    elif format == "binary":
        xy = np.empty((len(points), 2), dtype="<f8")
        xy[:, 0] = points.x
        xy[:, 1] = points.y
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, len(points)))
            fh.write(xy.tobytes())
    else:
        raise ValueError(f"unknown point format {format!r}")


def read_mesh_vertices(path):
    """XY projection of every vertex of an ASCII OBJ or PLY mesh.

    The format is sniffed from the first line (``ply`` magic) and otherwise
    assumed to be OBJ. Vertex order is preserved and z is dropped.
    """
    with open(path, "rb") as fh:
        first = fh.readline().strip()
    if first == b"ply":
        return _read_ply(path)
    return _read_obj(path)


def _parse_float(tok, lineno):
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", line=lineno) from None
    return v


def _read_obj(path):
    xs, ys = [], []
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.startswith("v") or line[1:2] not in (" ", "\t"):
                continue
            parts = line.split()
            if len(parts) < 3:
                raise ParseError("vertex needs at least x and y", line=lineno)
            xs.append(_parse_float(parts[1], lineno))
            ys.append(_parse_float(parts[2], lineno))
    pts = PointSet(np.array(xs, dtype=np.float64), np.array(ys, dtype=np.float64))
    return _finite_or_raise(pts, path)


def _read_ply(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    lines = raw.split(b"\n")
    elements = []  # (name, count, [property names])
    fmt = None
    body = None
    for lineno, line in enumerate(lines, 1):
        tok = line.decode("ascii", errors="replace").split()
        if not tok:
            continue
        if tok[0] == "format":
            fmt = tok[1] if len(tok) > 1 else None
        elif tok[0] == "element":
            if len(tok) != 3:
                raise ParseError("malformed element line", line=lineno)
            elements.append((tok[1], int(tok[2]), []))
        elif tok[0] == "property":
            if not elements:
                raise ParseError("property before any element", line=lineno)
            elements[-1][2].append((tok[-1], tok[1] == "list"))
        elif tok[0] == "end_header":
            body = lineno
            break
    if body is None:
        raise ParseError("missing end_header")
    if fmt != "ascii":
        raise UnsupportedFormat(f"only ASCII PLY is supported (file declares {fmt!r})")

    xs = ys = None
    row = body
    for name, count, props in elements:
        if name != "vertex":
            row += count
            continue
        names = [p for p, _ in props]
        if "x" not in names or "y" not in names:
            raise ParseError("vertex element lacks x/y properties")
        if any(is_list for _, is_list in props):
            raise UnsupportedFormat("list properties on vertices are not supported")
        ix, iy = names.index("x"), names.index("y")
        xs = np.empty(count)
        ys = np.empty(count)
        for k in range(count):
            if row + k >= len(lines):
                raise ParseError("unexpected end of vertex data", line=row + k + 1)
            tok = lines[row + k].split()
            if len(tok) < len(names):
                raise ParseError("short vertex row", line=row + k + 1)
            xs[k] = _parse_float(tok[ix], row + k + 1)
            ys[k] = _parse_float(tok[iy], row + k + 1)
        row += count
    if xs is None:
        raise ParseError("no vertex element in PLY header")
    return _finite_or_raise(PointSet(xs, ys), path)


def write_synthetic_obj(path, n, seed):
    """Write an ASCII OBJ with ``n`` vertices of a lumpy, tilted ellipsoid.

    Stand-in for scanned models: a dense interior under projection, a smooth
    but irregular silhouette. A face line follows every third vertex so the
    reader has something to skip.
    """
    rng = _rng(seed)
    u = rng.random((n, 3))
    z = 2.0 * u[:, 0] - 1.0
    phi = 2.0 * np.pi * u[:, 1]
    s = np.sqrt(1.0 - z * z)
    p = np.column_stack((s * np.cos(phi), s * np.sin(phi), z))
    lobes = rng.normal(size=(4, 3))
    radius = 1.0 + 0.15 * np.sin(p @ lobes.T * 3.0).sum(axis=1) + 0.01 * u[:, 2]
    p *= radius[:, None] * np.array([1.0, 0.6, 1.4])
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    p = p @ q
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# synthetic mesh, n={n} seed={seed}\n")
        for i, (a, b, c) in enumerate(p.tolist(), 1):
            fh.write(f"v {a:.17g} {b:.17g} {c:.17g}\n")
            if i % 3 == 0:
                fh.write(f"f {i - 2} {i - 1} {i}\n")
    return path
