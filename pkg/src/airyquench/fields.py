"""Uniform 1-D grids and the complex/real fields that live on them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError


@dataclass(frozen=True)
class SpaceGrid:
    x_min: float
    dx: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ShapeError(f"grid needs at least 2 points, got {self.count}")
        if not self.dx > 0:
            raise ShapeError(f"grid spacing must be positive, got {self.dx}")

    @property
    def x_max(self) -> float:
        return self.x_min + self.dx * (self.count - 1)

    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.count)

    @classmethod
    def from_bounds(cls, x_min: float, x_max: float, dx: float) -> "SpaceGrid":
        count = int(round((x_max - x_min) / dx)) + 1
        return cls(x_min, dx, max(count, 2))

    def matches(self, other: "SpaceGrid", tol: float = 1e-12) -> bool:
        scale = max(abs(self.x_min), abs(self.x_max), 1.0)
        return (self.count == other.count
                and abs(self.x_min - other.x_min) <= tol * scale
                and abs(self.dx - other.dx) <= tol * max(self.dx, other.dx))


def _require_same_grid(a, b):
    if not a.grid.matches(b.grid):
        raise ShapeError("fields live on different grids")


@dataclass
class WaveField:
    """Complex wavefunction samples at a fixed time."""
    grid: SpaceGrid
    time: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.grid.count,):
            raise ShapeError(
                f"values shape {self.values.shape} does not match grid count {self.grid.count}")

    def norm(self) -> float:
        return float(np.sqrt(np.trapezoid(np.abs(self.values) ** 2, dx=self.grid.dx)))


@dataclass
class RealField:
    grid: SpaceGrid
    time: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.count,):
            raise ShapeError(
                f"values shape {self.values.shape} does not match grid count {self.grid.count}")

    def integral(self) -> float:
        return float(np.trapezoid(self.values, dx=self.grid.dx))
