"""Evaluation grids in the ``x = -ln y`` parametrisation, ``y`` in (0, 1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

DEFAULT_POINTS = 500
DEFAULT_Y_MIN = 0.01
DEFAULT_Y_MAX = 0.99
REPRODUCTION_POINTS = 2000


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing ``y`` points; :attr:`x` lists ``-ln y`` in increasing order."""

    y_points: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y_points, dtype=float).ravel()
        if y.size < 2:
            raise DimensionError("a grid needs at least 2 points")
        if np.any(np.diff(y) <= 0):
            raise DimensionError("grid y points must be strictly increasing")
        if y[0] <= 0 or y[-1] >= 1:
            raise DimensionError("grid y points must lie inside (0, 1)")
        y.setflags(write=False)
        object.__setattr__(self, "y_points", y)

    @classmethod
    def uniform(
        cls, points: int = DEFAULT_POINTS, y_min: float = DEFAULT_Y_MIN, y_max: float = DEFAULT_Y_MAX
    ) -> Grid:
        if not 0 < y_min < y_max < 1:
            raise DimensionError(f"need 0 < y_min < y_max < 1, got {y_min}, {y_max}")
        return cls(np.linspace(y_min, y_max, int(points)))

    @property
    def y(self) -> np.ndarray:
        """``y`` values aligned with :attr:`x` (so decreasing)."""
        return self.y_points[::-1]

    @property
    def x(self) -> np.ndarray:
        return -np.log(self.y)

    def __len__(self) -> int:
        return self.y_points.size

    def densified(self, factor: int = 2) -> Grid:
        """Same range with ``factor`` times as many points."""
        y = self.y_points
        return Grid(np.linspace(y[0], y[-1], factor * (y.size - 1) + 1))

    def to_dict(self) -> dict:
        y = self.y_points
        if np.allclose(np.diff(y), (y[-1] - y[0]) / (y.size - 1), rtol=1e-9, atol=0):
            return {"points": int(y.size), "y_min": float(y[0]), "y_max": float(y[-1])}
        return {"y_points": y.tolist()}


def as_x_array(grid) -> np.ndarray:
    """Increasing evaluation abscissae from a :class:`Grid` or any array-like."""
    if isinstance(grid, Grid):
        return grid.x
    return np.asarray(grid, dtype=float).ravel()
