"""Neumann cosine spectral calculus on cell-centered rectangle grids.

A field sampled at cell centers expands exactly in the tensor cosine basis
phi_j(x) phi_k(y) with phi_0 = 1 and phi_m(s) = cos(m pi s / L); the type-II
DCT of the samples is the exact discrete analysis of that basis, and each
mode is an eigenfunction of the Neumann Laplacian with eigenvalue
mu(j, k) = (j pi / lx)^2 + (k pi / ly)^2.  Applying e^{t Laplacian} is
therefore an exact per-mode multiplier with no time-stepping error.

Normalization: coefficients are pinned so that coeff(0, 0) equals the field
mean, hence mass statements read directly off the spectrum.

Derivatives follow the basis: d/dx maps cosine modes to sine modes
(synthesized with a type-III DST), and the divergence sine-analyzes each
component before differentiating back to the cosine basis, so that
divergence(gradient(f)) reproduces the spectral Laplacian exactly at the
collocation points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dctn, idctn, dct, idct, dst

from .grid import Grid, ScalarField, VectorField

__all__ = [
    "Spectrum",
    "dct_forward",
    "dct_inverse",
    "lambda1",
    "heat_semigroup",
    "helmholtz_semigroup",
    "gradient",
    "divergence",
]


class _Plan:
    """Cached per-grid transform metadata (read-only after construction)."""

    __slots__ = (
        "grid", "nx", "ny", "kx", "ky", "mu", "weight", "dealias_mask",
        "X", "Y",
    )

    def __init__(self, grid: Grid):
        self.grid = grid
        nx, ny = grid.nx, grid.ny
        self.nx, self.ny = nx, ny
        self.kx = np.arange(nx) * (np.pi / grid.lx)          # x-mode wavenumbers
        self.ky = np.arange(ny) * (np.pi / grid.ly)
        self.mu = self.ky[:, None] ** 2 + self.kx[None, :] ** 2
        wx = np.full(nx, 0.5 * grid.lx)
        wx[0] = grid.lx
        wy = np.full(ny, 0.5 * grid.ly)
        wy[0] = grid.ly
        self.weight = wy[:, None] * wx[None, :]              # L2 norms^2 of basis modes
        mask = np.ones((ny, nx))
        mask[:, (2 * nx) // 3:] = 0.0                        # 2/3-rule low-pass
        mask[(2 * ny) // 3:, :] = 0.0
        self.dealias_mask = mask
        self.X, self.Y = grid.meshes()

    # -- 2-D cosine analysis / synthesis -------------------------------------

    def fwd(self, a2d: np.ndarray) -> np.ndarray:
        c = dctn(a2d, type=2) / (self.nx * self.ny)
        c[0, :] /= 2
        c[:, 0] /= 2
        c[0, 0] = np.mean(a2d)  # pin the 0-mode: exact mean convention
        return c

    def inv(self, c2d: np.ndarray) -> np.ndarray:
        y = c2d * (self.nx * self.ny)
        y[0, :] *= 2
        y[:, 0] *= 2
        return idctn(y, type=2)

    # -- 1-D helpers along one axis ------------------------------------------

    def _cos_coeffs(self, a2d: np.ndarray, axis: int) -> np.ndarray:
        n = self.nx if axis == 1 else self.ny
        c = dct(a2d, type=2, axis=axis) / n
        sl = [slice(None)] * 2
        sl[axis] = 0
        c[tuple(sl)] /= 2
        return c

    def _cos_synth(self, c: np.ndarray, axis: int) -> np.ndarray:
        n = self.nx if axis == 1 else self.ny
        y = c * n
        sl = [slice(None)] * 2
        sl[axis] = 0
        y[tuple(sl)] *= 2
        return idct(y, type=2, axis=axis)

    def _sin_synth(self, b: np.ndarray, axis: int) -> np.ndarray:
        # b holds modes m = 1..N along `axis`; type-III DST evaluates the sum
        # at the cell centers given half-scaled interior coefficients.
        x = b.copy()
        sl = [slice(None)] * 2
        sl[axis] = slice(0, -1)
        x[tuple(sl)] = x[tuple(sl)] / 2
        return dst(x, type=3, axis=axis)

    def _sin_coeffs(self, g2d: np.ndarray, axis: int) -> np.ndarray:
        n = self.nx if axis == 1 else self.ny
        b = dst(g2d, type=2, axis=axis) / n
        sl = [slice(None)] * 2
        sl[axis] = -1
        b[tuple(sl)] /= 2
        return b

    def _deriv_axis(self, a2d: np.ndarray, axis: int) -> np.ndarray:
        """Spectral d/dx (axis=1) or d/dy (axis=0) of cosine-sampled values."""
        k = self.kx if axis == 1 else self.ky
        c = self._cos_coeffs(a2d, axis)
        b = np.zeros_like(c)
        if axis == 1:
            b[:, :-1] = -c[:, 1:] * k[1:][None, :]
        else:
            b[:-1, :] = -c[1:, :] * k[1:][:, None]
        return self._sin_synth(b, axis)

    def _div_axis(self, w2d: np.ndarray, axis: int) -> np.ndarray:
        """Cosine coefficients of the axis-derivative of a sine-extended field."""
        k = self.kx if axis == 1 else self.ky
        b = self._sin_coeffs(w2d, axis)
        c = np.zeros_like(b)
        if axis == 1:
            c[:, 1:] = b[:, :-1] * k[1:][None, :]
        else:
            c[1:, :] = b[:-1, :] * k[1:][:, None]
        # the top sine mode differentiates onto a cosine mode that vanishes
        # identically at cell centers, so it is dropped exactly
        return c

    def grad(self, a2d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return self._deriv_axis(a2d, axis=1), self._deriv_axis(a2d, axis=0)

    def grad_from_coeffs(self, c2d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Gradient values synthesized directly from 2-D cosine coefficients.

        Avoids re-analyzing synthesized values, so tiny modes keep full
        relative accuracy (no absolute dust floor from large modes).
        """
        ax = self._cos_synth(c2d, axis=0)     # x-mode coefficients at y points
        bx = np.zeros_like(ax)
        bx[:, :-1] = -ax[:, 1:] * self.kx[1:][None, :]
        gx = self._sin_synth(bx, axis=1)
        ay = self._cos_synth(c2d, axis=1)     # y-mode coefficients at x points
        by = np.zeros_like(ay)
        by[:-1, :] = -ay[1:, :] * self.ky[1:][:, None]
        gy = self._sin_synth(by, axis=0)
        return gx, gy

    def div_coeffs(self, wx2d: np.ndarray, wy2d: np.ndarray) -> np.ndarray:
        # _div_axis leaves point values along the other axis; a cosine
        # analysis there completes the separable 2-D coefficient array.
        cx = self._cos_coeffs(self._div_axis(wx2d, axis=1), axis=0)
        cy = self._cos_coeffs(self._div_axis(wy2d, axis=0), axis=1)
        return cx + cy

    def div(self, wx2d: np.ndarray, wy2d: np.ndarray) -> np.ndarray:
        gx = self._cos_synth(self._div_axis(wx2d, axis=1), axis=1)
        gy = self._cos_synth(self._div_axis(wy2d, axis=0), axis=0)
        return gx + gy


_PLANS: dict[Grid, _Plan] = {}


def plan_for(grid: Grid) -> _Plan:
    """Shared read-only transform plan for a grid."""
    plan = _PLANS.get(grid)
    if plan is None:
        plan = _Plan(grid)
        _PLANS[grid] = plan
    return plan


@dataclass(frozen=True)
class Spectrum:
    """Cosine coefficients of a field; coeffs2d[k, j] is mode (j, k)."""

    grid: Grid
    coeffs2d: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs2d, dtype=float)
        if arr.shape != (self.grid.ny, self.grid.nx):
            raise ValueError(
                f"coeffs2d must have shape ({self.grid.ny}, {self.grid.nx})"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs2d", arr)

    def coeff(self, j: int, k: int) -> float:
        """Coefficient of mode cos(j pi x / lx) cos(k pi y / ly)."""
        return float(self.coeffs2d[k, j])

    def eigenvalue(self, j: int, k: int) -> float:
        """Neumann Laplacian eigenvalue mu(j, k) of that mode."""
        return (j * np.pi / self.grid.lx) ** 2 + (k * np.pi / self.grid.ly) ** 2

    @property
    def mean(self) -> float:
        return float(self.coeffs2d[0, 0])


def dct_forward(f: ScalarField) -> Spectrum:
    """Cosine analysis of a field; coeff(0, 0) equals the field mean."""
    plan = plan_for(f.grid)
    return Spectrum(f.grid, plan.fwd(f.values2d))


def dct_inverse(s: Spectrum) -> ScalarField:
    """Cosine synthesis; exact inverse of dct_forward up to rounding."""
    plan = plan_for(s.grid)
    return ScalarField(s.grid, plan.inv(s.coeffs2d))


def lambda1(grid: Grid) -> float:
    """Smallest nonzero Neumann Laplacian eigenvalue of the rectangle."""
    mu = plan_for(grid).mu.copy()
    mu[0, 0] = np.inf
    return float(mu.min())


def _check_time(t: float) -> float:
    t = float(t)
    if t < 0:
        raise ValueError(f"semigroup time must be >= 0, got {t}")
    return t


def heat_semigroup(f: ScalarField, t: float) -> ScalarField:
    """Exact Neumann heat flow: per-mode multiplier exp(-mu t); preserves the mean."""
    t = _check_time(t)
    if t == 0.0:
        return f
    plan = plan_for(f.grid)
    c = plan.fwd(f.values2d)
    c *= np.exp(-plan.mu * t)
    return ScalarField(f.grid, plan.inv(c))


def helmholtz_semigroup(f: ScalarField, t: float) -> ScalarField:
    """Damped heat flow exp(t(Laplacian - 1)): multiplier exp(-(mu + 1) t)."""
    t = _check_time(t)
    if t == 0.0:
        return f
    plan = plan_for(f.grid)
    c = plan.fwd(f.values2d)
    c *= np.exp(-(plan.mu + 1.0) * t)
    return ScalarField(f.grid, plan.inv(c))


def gradient(f: ScalarField) -> VectorField:
    """Term-by-term derivative of the cosine expansion, collocated on cell centers."""
    plan = plan_for(f.grid)
    gx, gy = plan.grad(f.values2d)
    return VectorField(f.grid, gx, gy)


def divergence(w: VectorField) -> ScalarField:
    """Spectral divergence with the odd extension matching gradient output.

    For w = gradient(f) this reproduces the spectral Laplacian of f; the
    result always has exactly zero mean mode.
    """
    plan = plan_for(w.grid)
    return ScalarField(w.grid, plan.div(w.xcomp2d, w.ycomp2d))
