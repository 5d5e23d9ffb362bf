"""Cell-centered rectangle grids, fields on them, and midpoint quadrature.

The domain is an axis-aligned rectangle [0, lx] x [0, ly] split into nx * ny
equal cells; all nodes are cell centers, so no node ever lies on the boundary.
Fields are stored flat in row-major order with the y index outermost:
``values[j * nx + i]`` holds the value at ``(x_i, y_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Grid", "ScalarField", "VectorField", "make_grid", "integrate", "sample"]


@dataclass(frozen=True)
class Grid:
    """Immutable cell-centered discretization of [0, lx] x [0, ly]."""

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        for name, n in (("nx", self.nx), ("ny", self.ny)):
            if not isinstance(n, (int, np.integer)) or n < 4:
                raise ValueError(f"{name} must be an integer >= 4, got {n!r}")
            if n % 2 != 0:
                raise ValueError(f"{name} must be even (dealiasing rule), got {n}")
        for name, l in (("lx", self.lx), ("ly", self.ly)):
            if not np.isfinite(l) or l <= 0:
                raise ValueError(f"{name} must be a positive finite real, got {l!r}")

    @property
    def hx(self) -> float:
        return self.lx / self.nx

    @property
    def hy(self) -> float:
        return self.ly / self.ny

    @property
    def size(self) -> int:
        return self.nx * self.ny

    @property
    def area(self) -> float:
        return self.lx * self.ly

    def xcoords(self) -> np.ndarray:
        """Cell-center x coordinates, shape (nx,)."""
        return (np.arange(self.nx) + 0.5) * self.hx

    def ycoords(self) -> np.ndarray:
        """Cell-center y coordinates, shape (ny,)."""
        return (np.arange(self.ny) + 0.5) * self.hy

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate meshes X, Y of shape (ny, nx)."""
        return np.meshgrid(self.xcoords(), self.ycoords())


def _as_flat(grid: Grid, values: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape == (grid.ny, grid.nx):
        arr = arr.reshape(-1)
    elif arr.shape != (grid.size,):
        raise ValueError(
            f"{name} must have shape ({grid.size},) or ({grid.ny}, {grid.nx}), "
            f"got {arr.shape}"
        )
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ScalarField:
    """Real-valued field on the cell centers of a grid.

    Immutable after construction.  ``blowup_witness`` marks a field that is
    allowed to carry non-finite entries (a terminal snapshot of a diverging
    run); every other field must be finite.
    """

    grid: Grid
    values: np.ndarray
    blowup_witness: bool = False

    def __post_init__(self):
        arr = _as_flat(self.grid, self.values, "values")
        object.__setattr__(self, "values", arr)
        if not self.blowup_witness and not np.all(np.isfinite(arr)):
            raise ValueError("ScalarField values must be finite")

    @property
    def values2d(self) -> np.ndarray:
        """View of the values with shape (ny, nx)."""
        return self.values.reshape(self.grid.ny, self.grid.nx)


@dataclass(frozen=True)
class VectorField:
    """Two-component field on the cell centers of a grid (same layout)."""

    grid: Grid
    xcomp: np.ndarray
    ycomp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "xcomp", _as_flat(self.grid, self.xcomp, "xcomp"))
        object.__setattr__(self, "ycomp", _as_flat(self.grid, self.ycomp, "ycomp"))

    @property
    def xcomp2d(self) -> np.ndarray:
        return self.xcomp.reshape(self.grid.ny, self.grid.nx)

    @property
    def ycomp2d(self) -> np.ndarray:
        return self.ycomp.reshape(self.grid.ny, self.grid.nx)

    def magnitude(self) -> np.ndarray:
        """Pointwise Euclidean magnitude, flat layout."""
        return np.hypot(self.xcomp, self.ycomp)


def make_grid(nx: int, ny: int, lx: float, ly: float) -> Grid:
    """Build a grid; rejects odd or tiny cell counts and non-positive sides."""
    return Grid(nx=int(nx), ny=int(ny), lx=float(lx), ly=float(ly))


def integrate(f: ScalarField) -> float:
    """Midpoint quadrature of f over the rectangle: hx*hy * sum of values."""
    if not np.all(np.isfinite(f.values)):
        raise ValueError("integrate requires a finite field")
    return f.grid.hx * f.grid.hy * float(np.sum(f.values))


def sample(fn: Callable[[float, float], float], grid: Grid) -> ScalarField:
    """Evaluate fn(x, y) at every cell center.

    fn may be vectorized over numpy arrays or accept plain floats.  A
    non-finite result raises with the offending node named.
    """
    X, Y = grid.meshes()
    try:
        with np.errstate(all="ignore"):
            vals = np.asarray(fn(X, Y), dtype=float)
        if vals.shape != X.shape:
            vals = np.broadcast_to(vals, X.shape).astype(float)
    except Exception:
        vals = np.empty_like(X)
        for j in range(grid.ny):
            for i in range(grid.nx):
                try:
                    vals[j, i] = float(fn(X[j, i], Y[j, i]))
                except Exception as exc:
                    raise ValueError(
                        f"sample: fn failed at node (i={i}, j={j}), "
                        f"(x, y)=({X[j, i]:.6g}, {Y[j, i]:.6g}): {exc}"
                    ) from exc
    bad = ~np.isfinite(vals)
    if bad.any():
        j, i = np.argwhere(bad)[0]
        raise ValueError(
            f"sample: fn returned non-finite value {vals[j, i]!r} at node "
            f"(i={i}, j={j}), (x, y)=({X[j, i]:.6g}, {Y[j, i]:.6g})"
        )
    return ScalarField(grid, vals)
