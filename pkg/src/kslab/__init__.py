"""Numerical laboratory for the fully parabolic Keller-Segel system in 2-D.

Cell-centered cosine spectral discretization of the rectangle with Neumann
boundary conditions, exact linear semigroup flow, scalar and bounded
tensor-valued chemotactic sensitivities with boundary cutoff regularization,
and an empirical verification suite for the smoothing estimates, the
convolution integral inequality, energy and dual-norm bounds, and the
exponential convergence behavior of small-data solutions.
"""

__version__ = "0.1.0"

from .grid import Grid, ScalarField, VectorField, make_grid, integrate, sample
from .spectral import (
    Spectrum,
    dct_forward,
    dct_inverse,
    lambda1,
    heat_semigroup,
    helmholtz_semigroup,
    gradient,
    divergence,
)
from .norms import NormRecord, lp_norm, vector_lp_norm, dual_w12_norm, mean

__all__ = [
    "__version__",
    "Grid",
    "ScalarField",
    "VectorField",
    "make_grid",
    "integrate",
    "sample",
    "Spectrum",
    "dct_forward",
    "dct_inverse",
    "lambda1",
    "heat_semigroup",
    "helmholtz_semigroup",
    "gradient",
    "divergence",
    "NormRecord",
    "lp_norm",
    "vector_lp_norm",
    "dual_w12_norm",
    "mean",
]
