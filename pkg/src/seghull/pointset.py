from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteInput


@dataclass(frozen=True)
class PointSet:
    """Planar points stored as two row-aligned float64 coordinate arrays."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.ascontiguousarray(self.x, dtype=np.float64).reshape(-1)
        y = np.ascontiguousarray(self.y, dtype=np.float64).reshape(-1)
        if x.shape != y.shape:
            raise ValueError(f"x and y differ in length ({len(x)} != {len(y)})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_pairs(cls, pairs):
        arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1])

    @property
    def count(self):
        return len(self.x)

    def __len__(self):
        return len(self.x)

    def to_array(self):
        return np.column_stack((self.x, self.y))

    def check_finite(self):
        bad = ~(np.isfinite(self.x) & np.isfinite(self.y))
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NonFiniteInput(f"point {i} is not finite: ({self.x[i]}, {self.y[i]})")
        return self
