"""Initial-data profiles with amplitudes scaled to prescribed norms.

A profile fixes nonnegative spatial shapes for (u0, v0); ``build`` rescales
the shape amplitudes so that the scaled part of u0 hits a target L1 norm
and grad v0 hits a target L2 norm, on top of fixed floors.  Shapes are kept
nonnegative so any amplitude yields admissible (nonnegative) data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import Grid, ScalarField, sample
from .norms import lp_norm, vector_lp_norm
from .spectral import gradient

__all__ = [
    "InitialProfile",
    "profile_constant",
    "profile_cosine",
    "profile_bump",
    "profile_bump_cosine",
]


@dataclass(frozen=True)
class InitialProfile:
    name: str
    u_shape: Callable[[np.ndarray, np.ndarray], np.ndarray]
    v_shape: Callable[[np.ndarray, np.ndarray], np.ndarray]
    u_floor: float = 0.0
    v_floor: float = 0.0

    def build(
        self, grid: Grid, target_u_l1: float, target_grad_v_l2: float
    ) -> tuple[ScalarField, ScalarField]:
        """Data with ||a u_shape||_1 = target_u_l1 and ||b grad v_shape||_2
        = target_grad_v_l2, plus the fixed floors."""
        if target_u_l1 < 0 or target_grad_v_l2 < 0:
            raise ValueError("targets must be nonnegative")
        us = sample(self.u_shape, grid)
        if us.values.min() < 0:
            raise ValueError(f"profile {self.name!r}: u_shape must be nonnegative")
        a = 0.0
        if target_u_l1 > 0:
            base = lp_norm(us, 1)
            if base == 0:
                raise ValueError(
                    f"profile {self.name!r} cannot meet a u mass target: u_shape is zero"
                )
            a = target_u_l1 / base
        vs = sample(self.v_shape, grid)
        b = 0.0
        if target_grad_v_l2 > 0:
            base = vector_lp_norm(gradient(vs), 2)
            if base == 0:
                raise ValueError(
                    f"profile {self.name!r} cannot meet a chemical-gradient target: "
                    "v_shape has zero gradient"
                )
            b = target_grad_v_l2 / base
        u0 = ScalarField(grid, self.u_floor + a * us.values)
        v0 = ScalarField(grid, self.v_floor + b * vs.values)
        if v0.values.min() < 0:
            raise ValueError(
                f"profile {self.name!r}: v0 dips negative; raise v_floor"
            )
        return u0, v0


def profile_constant(u_floor: float = 0.0, v_floor: float = 0.0) -> InitialProfile:
    """Spatially constant data; the chemical carries no gradient."""
    return InitialProfile(
        "constant",
        u_shape=lambda x, y: np.ones_like(x),
        v_shape=lambda x, y: np.ones_like(x),
        u_floor=u_floor,
        v_floor=v_floor,
    )


def profile_cosine(
    jx: int = 1, ky: int = 0, u_floor: float = 0.0, v_floor: float = 0.0
) -> InitialProfile:
    """Lifted cosine mode 1 + cos(jx pi x / lx) cos(ky pi y / ly), nonnegative."""

    def shape(x, y):
        lx = np.max(x) + np.min(x)   # cell centers are symmetric in [0, lx]
        ly = np.max(y) + np.min(y)
        return 1.0 + np.cos(jx * np.pi * x / lx) * np.cos(ky * np.pi * y / ly)

    return InitialProfile("cosine-mode", shape, shape, u_floor, v_floor)


def profile_bump(
    sigma: float = 0.2, cx: float = 0.5, cy: float = 0.5,
    u_floor: float = 0.0, v_floor: float = 0.0,
) -> InitialProfile:
    """Concentrated Gaussian bump for both the density and the chemical."""

    def shape(x, y):
        return np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * sigma**2))

    return InitialProfile("gaussian-bump", shape, shape, u_floor, v_floor)


def profile_bump_cosine(
    sigma: float = 0.2, jx: int = 1, ky: int = 0,
    u_floor: float = 0.0, v_floor: float = 0.0,
) -> InitialProfile:
    """Gaussian-bump density with a lifted-cosine chemical."""
    bump = profile_bump(sigma)
    cos = profile_cosine(jx, ky)
    return InitialProfile("bump-cosine", bump.u_shape, cos.v_shape, u_floor, v_floor)
