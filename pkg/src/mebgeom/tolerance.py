from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, GeometryError


@dataclass(frozen=True)
class Tolerance:
    rel_eps: float = 1e-9
    abs_eps: float = 1e-12

    def __post_init__(self):
        if not (self.rel_eps > 0 and self.abs_eps > 0):
            raise GeometryError("tolerances must be positive")

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.rel_eps * max(abs(a), abs(b)) + self.abs_eps

    def leq(self, a: float, b: float) -> bool:
        """``a <= b`` up to the mixed relative/absolute slack."""
        return a <= b + self.rel_eps * max(abs(a), abs(b)) + self.abs_eps

    def slack(self, scale: float) -> float:
        return self.rel_eps * abs(scale) + self.abs_eps


DEFAULT_TOL = Tolerance()


def as_points(points, *, min_points: int = 1) -> np.ndarray:
    """Validate and return an ``(n, d)`` float array.

    A 1-D input is read as ``n`` points on the real line.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise GeometryError(f"expected an (n, d) array of points, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise EmptyInput("point set is empty")
    if arr.shape[1] == 0:
        raise GeometryError("points must have dimension >= 1")
    if arr.shape[0] < min_points:
        raise GeometryError(f"need at least {min_points} points, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError("coordinates must be finite")
    return arr


def coordinate_scale(points: np.ndarray) -> float:
    """``max(1, max |coordinate|)``; the unit for absolute residual checks."""
    return max(1.0, float(np.max(np.abs(points))))
