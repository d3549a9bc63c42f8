from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigurationError

MIN_POINTS = 16
DEFAULT_POINTS = 999


@dataclass(frozen=True, eq=False)
class EvaluationGrid:
    """Strictly increasing abscissae, optionally built from y via x = -ln y.

    ``ys`` is aligned with ``xs``, so when present it is strictly decreasing.
    """

    xs: np.ndarray
    ys: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        if xs.ndim != 1 or xs.size < MIN_POINTS:
            raise ConfigurationError(f"grid needs at least {MIN_POINTS} points, got {xs.size}")
        if not np.all(np.isfinite(xs)) or np.any(np.diff(xs) <= 0):
            raise ConfigurationError("grid abscissae must be finite and strictly increasing")
        xs.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        if self.ys is not None:
            ys = np.asarray(self.ys, dtype=float)
            if ys.shape != xs.shape or np.any((ys <= 0) | (ys >= 1)):
                raise ConfigurationError("y values must lie strictly inside (0, 1)")
            ys.setflags(write=False)
            object.__setattr__(self, "ys", ys)

    @classmethod
    def from_ys(cls, ys) -> "EvaluationGrid":
        ys = np.asarray(ys, dtype=float)
        if ys.ndim != 1 or np.any((ys <= 0) | (ys >= 1)):
            raise ConfigurationError("y values must lie strictly inside (0, 1)")
        ys = np.sort(ys)[::-1]
        if np.any(np.diff(ys) >= 0):
            raise ConfigurationError("y values must be distinct")
        return cls(xs=-np.log(ys), ys=ys)

    @classmethod
    def from_xs(cls, xs) -> "EvaluationGrid":
        return cls(xs=np.asarray(xs, dtype=float))

    @property
    def transformed(self) -> bool:
        return self.ys is not None

    @property
    def y_values(self) -> np.ndarray:
        """y = exp(-x); the stored ys when the grid was built from them."""
        return self.ys if self.ys is not None else np.exp(-self.xs)

    def __len__(self) -> int:
        return self.xs.size


def default_grid(points: int = DEFAULT_POINTS) -> EvaluationGrid:
    """Equally spaced y = k/(points+1), k = 1..points, mapped through x = -ln y.

    The default 999 points give y in {0.001, ..., 0.999}.
    """
    if points < MIN_POINTS:
        raise ConfigurationError(f"grid needs at least {MIN_POINTS} points")
    ys = np.arange(1, points + 1, dtype=float) / (points + 1)
    return EvaluationGrid.from_ys(ys)
