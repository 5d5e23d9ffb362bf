"""Independent oracles shared by the test modules.

These deliberately re-derive their results through different code paths than
the package: the convolution integral through a fixed-panel midpoint rule
with its own endpoint substitution, written from scratch.
"""

import numpy as np


def midpoint_convolution(alpha, beta, gamma, delta, t, panels=10**6):
    """Midpoint-rule value of
    int_0^t (1+(t-s)^-alpha) e^{-gamma(t-s)} (1+s^-beta) e^{-delta s} ds
    with power substitutions removing the endpoint singularities."""
    half = 0.5 * t
    total = 0.0

    # [0, t/2]: substitute s = sig^mb when beta > 0
    if beta > 0:
        mb = 1.0 / (1.0 - beta)
        hi = half ** (1.0 / mb)
        sig = (np.arange(panels) + 0.5) * (hi / panels)
        s = sig**mb
        weight = mb * sig ** (mb - 1.0) + mb  # jacobian of ds plus s^-beta ds
        vals = (1.0 + (t - s) ** (-alpha)) * np.exp(-gamma * (t - s)) * np.exp(-delta * s)
        total += float(np.sum(vals * weight)) * (hi / panels)
    else:
        s = (np.arange(panels) + 0.5) * (half / panels)
        vals = (
            (1.0 + (t - s) ** (-alpha))
            * np.exp(-gamma * (t - s))
            * (1.0 + s ** (-beta))
            * np.exp(-delta * s)
        )
        total += float(np.sum(vals)) * (half / panels)

    # [t/2, t]: u = t - s in [0, t/2], substitute u = sig^ma when alpha > 0
    if alpha > 0:
        ma = 1.0 / (1.0 - alpha)
        hi = half ** (1.0 / ma)
        sig = (np.arange(panels) + 0.5) * (hi / panels)
        u = sig**ma
        weight = ma * sig ** (ma - 1.0) + ma
        vals = np.exp(-gamma * u) * (1.0 + (t - u) ** (-beta)) * np.exp(-delta * (t - u))
        total += float(np.sum(vals * weight)) * (hi / panels)
    else:
        u = (np.arange(panels) + 0.5) * (half / panels)
        vals = (
            (1.0 + u ** (-alpha))
            * np.exp(-gamma * u)
            * (1.0 + (t - u) ** (-beta))
            * np.exp(-delta * (t - u))
        )
        total += float(np.sum(vals)) * (half / panels)

    return total


STANDARD_SWEEP_AB = (-1.0, 0.0, 0.5, 0.9)
STANDARD_SWEEP_GD = ((1.0, 2.0), (2.0, 1.0), (0.1, 5.0))


def standard_sweep_tgrid(n=9):
    return np.geomspace(1e-2, 1e2, n)
