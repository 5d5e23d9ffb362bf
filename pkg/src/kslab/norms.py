"""Lebesgue norms, the mean, and the dual Sobolev norm used by the trackers.

All integrals are midpoint quadrature on the cell centers; the p = infinity
norm is the max over cell centers.  The (W^{1,2})* dual norm is computed
spectrally through the Riesz map (I - Laplacian)^{-1}, which diagonalizes in
the cosine basis, so it is exact for the discrete field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ScalarField, VectorField, integrate
from .spectral import plan_for

__all__ = ["NormRecord", "lp_norm", "vector_lp_norm", "dual_w12_norm", "mean"]


def _check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"lp_norm requires p in [1, inf], got {p}")
    return p


def _lp_of_values(values: np.ndarray, cell_area: float, p: float) -> float:
    if np.isinf(p):
        return float(np.max(np.abs(values)))
    if p == 1.0:
        return float(cell_area * np.sum(np.abs(values)))
    if p == 2.0:
        return float(np.sqrt(cell_area * np.sum(values * values)))
    return float((cell_area * np.sum(np.abs(values) ** p)) ** (1.0 / p))


def lp_norm(f: ScalarField, p: float) -> float:
    """(integral |f|^p)^(1/p) by midpoint quadrature; max |f| for p = inf."""
    p = _check_p(p)
    if not np.all(np.isfinite(f.values)):
        raise ValueError("lp_norm requires a finite field")
    return _lp_of_values(f.values, f.grid.hx * f.grid.hy, p)


def vector_lp_norm(w: VectorField, p: float) -> float:
    """lp_norm of the pointwise Euclidean magnitude of w."""
    p = _check_p(p)
    mag = w.magnitude()
    if not np.all(np.isfinite(mag)):
        raise ValueError("vector_lp_norm requires a finite field")
    return _lp_of_values(mag, w.grid.hx * w.grid.hy, p)


def dual_w12_norm(f: ScalarField) -> float:
    """Norm of f as a functional on W^{1,2}: sqrt(sum c^2 w / (1 + mu)).

    Equivalently the W^{1,2} norm of the solution z of (I - Laplacian) z = f,
    evaluated per mode; exact on the discrete field.
    """
    plan = plan_for(f.grid)
    c = plan.fwd(f.values2d)
    return float(np.sqrt(np.sum(c * c * plan.weight / (1.0 + plan.mu))))


def mean(f: ScalarField) -> float:
    """Average value integrate(f) / (lx * ly)."""
    return integrate(f) / f.grid.area


@dataclass
class NormRecord:
    """One row of the norm time series tracked along a trajectory.

    ``energy_u``/``energy_v`` are the running integrals of the squared
    gradient norms from 0 to t (trapezoid in time); ``dual_ut``/``dual_vt``
    are the dual norms of the discrete time derivatives over the last step.
    ``ltheta_dev_u`` and ``ltheta_grad_v`` keep the deviation norms needed by
    the decay-envelope checks for the theta configured on the run; they are
    not part of the CSV schema.
    """

    t: float
    mass: float
    linf_dev_u: float
    l1_u: float
    l2_u: float
    ltheta_u: float
    l2_grad_v: float
    ln_grad_v: float
    linf_dev_v: float
    energy_u: float
    energy_v: float
    dual_ut: float
    dual_vt: float
    ltheta_dev_u: float
    ltheta_grad_v: float
