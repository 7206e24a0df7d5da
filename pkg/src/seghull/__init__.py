"""Data-parallel, segment-based QuickHull for planar point sets."""
from .errors import (
    DegenerateInput,
    EmptyInput,
    HullError,
    InputTooLarge,
    InternalError,
    NonFiniteInput,
    ParseError,
    UnsupportedFormat,
)
from .geometry import Point
from .hull import HullResult, HullState, SegmentStats, convex_hull, run
from .pointset import PointSet
from .primitives import MulticoreBackend, SequentialBackend, get_backend

__version__ = "0.1.0"
