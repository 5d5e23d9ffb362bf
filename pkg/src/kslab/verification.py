"""Empirical checks of the analytic estimates the solver leans on.

Four families of smoothing bounds for the mean-zero Neumann heat flow are
probed with seeded band-limited random fields over a log grid of times,
always alongside the deterministic first-eigenmode field (the near-extremal
probe that pins the reported constant), and the smallest constant that
makes each bound hold on the sample is reported together with the witness
attaining it.  A quadrature-based checker covers
the convolution inequality

    int_0^t (1+(t-s)^-alpha) e^{-gamma(t-s)} (1+s^-beta) e^{-delta s} ds
        <= C (1+t^{min(0, 1-alpha-beta)}) e^{-min(gamma, delta) t},

and trajectory post-processing extracts the empirical constants of the
intermediate decay envelopes for ||u - ubar0||_theta and ||grad v||_theta.

Reports are reproducible evidence: every witness carries enough data to
re-evaluate its ratio exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize as sp_optimize

from .grid import Grid, ScalarField, VectorField
from .dynamics import Trajectory
from .norms import lp_norm, vector_lp_norm
from .spectral import lambda1, plan_for

__all__ = [
    "BoundCheckReport",
    "Witness",
    "QuadratureError",
    "check_semigroup_i",
    "check_semigroup_ii",
    "check_semigroup_iii",
    "check_semigroup_iv",
    "check_integral_lemma",
    "check_decay_envelope",
    "convolution_lhs",
    "integral_envelope",
    "reevaluate_witness",
]

SPACE_DIM = 2
_DEFAULT_TIMES = np.geomspace(1e-3, 10.0, 33)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the required relative accuracy."""


@dataclass(frozen=True)
class Witness:
    """Arguments attaining the reported maximum ratio."""

    t: float
    ratio: float
    scalar_field: ScalarField | None = None
    vector_field: VectorField | None = None
    value: float | None = None


@dataclass(frozen=True)
class BoundCheckReport:
    estimate_id: str
    samples: int
    max_ratio: float
    empirical_constant: float
    witnesses: tuple[Witness, ...]
    params: dict = dc_field(default_factory=dict)


# -- random band-limited fields ------------------------------------------------


def _band_mask(plan) -> np.ndarray:
    kcut = (2.0 / 3.0) * np.pi * min(
        plan.grid.nx / plan.grid.lx, plan.grid.ny / plan.grid.ly
    )
    return plan.mu <= kcut**2


def _random_scalar(plan, rng, zero_mean: bool) -> np.ndarray:
    c = rng.standard_normal((plan.ny, plan.nx))
    c *= _band_mask(plan)
    if zero_mean:
        c[0, 0] = 0.0
    return c


def _check_pq(p: float, q: float, q_min: float, q_strict: bool, p_max_inf: bool):
    p, q = float(p), float(q)
    if q_strict:
        if not (q > q_min):
            raise ValueError(f"requires q > {q_min}, got q = {q}")
    else:
        if not (q >= q_min):
            raise ValueError(f"requires q >= {q_min}, got q = {q}")
    if not (q <= p):
        raise ValueError(f"requires q <= p, got p = {p}, q = {q}")
    if not p_max_inf and np.isinf(p):
        raise ValueError("requires p < inf")
    return p, q


def _envelope(t: np.ndarray, power: float, lam1: float) -> np.ndarray:
    # (1 + t^{-power}) e^{-lam1 t}; power = 0 gives the constant factor 2
    with np.errstate(divide="ignore"):
        return (1.0 + t ** (-power)) * np.exp(-lam1 * t)


def _lambda1_mode_coeffs(plan) -> np.ndarray:
    """Unit coefficient on the mode attaining the first nonzero eigenvalue."""
    c = np.zeros((plan.ny, plan.nx))
    if plan.kx[1] ** 2 <= plan.ky[1] ** 2:
        c[0, 1] = 1.0
    else:
        c[1, 0] = 1.0
    return c


def _semigroup_scan(grid, trials, seed, times, make_field, ratio_at, probes=()):
    """Max ratio over (field, t) pairs with witness capture.

    ``probes`` are deterministic payloads (the first-eigenmode field is
    always among them) evaluated before the random sample; random fields
    are drawn sequentially from one seeded generator, so the sample set for
    ``trials`` is a prefix of the one for any larger count.
    """
    rng = np.random.default_rng(seed)
    best = (-1.0, None, None)  # ratio, payload, t
    payloads = list(probes) + [make_field(rng) for _ in range(trials)]
    for payload in payloads:
        for t in times:
            r = ratio_at(payload, float(t))
            if r > best[0]:
                best = (r, payload, float(t))
    return best


def check_semigroup_i(
    grid: Grid, p: float, q: float, trials: int, seed: int = 0, times=None
) -> BoundCheckReport:
    """Mean-zero smoothing: ||e^{tL} w||_p against (1+t^{-(1/q-1/p)}) e^{-lam1 t} ||w||_q."""
    p, q = _check_pq(p, q, 1.0, False, True)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    times = _DEFAULT_TIMES if times is None else np.asarray(times, float)
    plan = plan_for(grid)
    lam1 = lambda1(grid)
    power = (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)

    def normalize(c):
        nq = lp_norm(ScalarField(grid, plan.inv(c)), q)
        return c / nq

    def make_field(rng):
        return normalize(_random_scalar(plan, rng, zero_mean=True))

    def ratio_at(c, t):
        left = lp_norm(ScalarField(grid, plan.inv(c * np.exp(-plan.mu * t))), p)
        return left / float(_envelope(np.asarray(t), power, lam1))

    probe = normalize(_lambda1_mode_coeffs(plan))
    best, payload, t_star = _semigroup_scan(
        grid, trials, seed, times, make_field, ratio_at, probes=(probe,)
    )
    w = ScalarField(grid, plan.inv(payload))
    return BoundCheckReport(
        "L21i",
        trials + 1,
        best,
        best,
        (Witness(t_star, best, scalar_field=w),),
        {"p": p, "q": q, "seed": seed, "trials": trials},
    )


def _grad_norm_of_heat(plan, grid, c, t, p):
    # gradient synthesized straight from the decayed coefficients: keeps
    # exponentially small modes relative-accurate at large t
    gx, gy = plan.grad_from_coeffs(c * np.exp(-plan.mu * t))
    return vector_lp_norm(VectorField(grid, gx, gy), p)


def check_semigroup_ii(
    grid: Grid, p: float, q: float, trials: int, seed: int = 0, times=None
) -> BoundCheckReport:
    """Gradient smoothing from L^q data: ||grad e^{tL} w||_p envelope with t^{-1/2-...}."""
    p, q = _check_pq(p, q, 1.0, False, True)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    times = _DEFAULT_TIMES if times is None else np.asarray(times, float)
    plan = plan_for(grid)
    lam1 = lambda1(grid)
    power = 0.5 + (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)

    def normalize(c):
        nq = lp_norm(ScalarField(grid, plan.inv(c)), q)
        return c / nq

    def make_field(rng):
        return normalize(_random_scalar(plan, rng, zero_mean=False))

    def ratio_at(c, t):
        left = _grad_norm_of_heat(plan, grid, c, t, p)
        return left / float(_envelope(np.asarray(t), power, lam1))

    probe = normalize(_lambda1_mode_coeffs(plan))
    best, payload, t_star = _semigroup_scan(
        grid, trials, seed, times, make_field, ratio_at, probes=(probe,)
    )
    w = ScalarField(grid, plan.inv(payload))
    return BoundCheckReport(
        "L21ii",
        trials + 1,
        best,
        best,
        (Witness(t_star, best, scalar_field=w),),
        {"p": p, "q": q, "seed": seed, "trials": trials},
    )


def check_semigroup_iii(
    grid: Grid, p: float, q: float, trials: int, seed: int = 0, times=None
) -> BoundCheckReport:
    """Gradient-to-gradient smoothing: ||grad e^{tL} w||_p against ||grad w||_q."""
    p, q = _check_pq(p, q, 2.0, False, False)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    times = _DEFAULT_TIMES if times is None else np.asarray(times, float)
    plan = plan_for(grid)
    lam1 = lambda1(grid)
    power = (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)

    def normalize(c):
        gx, gy = plan.grad_from_coeffs(c)
        nq = vector_lp_norm(VectorField(grid, gx, gy), q)
        return c / nq

    def make_field(rng):
        return normalize(_random_scalar(plan, rng, zero_mean=False))

    def ratio_at(c, t):
        left = _grad_norm_of_heat(plan, grid, c, t, p)
        return left / float(_envelope(np.asarray(t), power, lam1))

    probe = normalize(_lambda1_mode_coeffs(plan))
    best, payload, t_star = _semigroup_scan(
        grid, trials, seed, times, make_field, ratio_at, probes=(probe,)
    )
    w = ScalarField(grid, plan.inv(payload))
    return BoundCheckReport(
        "L21iii",
        trials + 1,
        best,
        best,
        (Witness(t_star, best, scalar_field=w),),
        {"p": p, "q": q, "seed": seed, "trials": trials},
    )


def check_semigroup_iv(
    grid: Grid, p: float, q: float, trials: int, seed: int = 0, times=None
) -> BoundCheckReport:
    """Divergence smoothing: ||e^{tL} div w||_p against (1+t^{-1/2-...}) e^{-lam1 t} ||w||_q."""
    p, q = _check_pq(p, q, 1.0, True, True)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    times = _DEFAULT_TIMES if times is None else np.asarray(times, float)
    plan = plan_for(grid)
    lam1 = lambda1(grid)
    power = 0.5 + (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)

    def payload_from_values(wx, wy):
        nq = vector_lp_norm(VectorField(grid, wx, wy), q)
        wx, wy = wx / nq, wy / nq
        return (wx, wy, plan.div_coeffs(wx, wy))

    def make_field(rng):
        cx = _random_scalar(plan, rng, zero_mean=False)
        cy = _random_scalar(plan, rng, zero_mean=False)
        return payload_from_values(plan.inv(cx), plan.inv(cy))

    def ratio_at(payload, t):
        _wx, _wy, div_c = payload
        left = lp_norm(ScalarField(grid, plan.inv(div_c * np.exp(-plan.mu * t))), p)
        return left / float(_envelope(np.asarray(t), power, lam1))

    probe = payload_from_values(*plan.grad_from_coeffs(-_lambda1_mode_coeffs(plan)))
    best, payload, t_star = _semigroup_scan(
        grid, trials, seed, times, make_field, ratio_at, probes=(probe,)
    )
    w = VectorField(grid, payload[0], payload[1])
    return BoundCheckReport(
        "L21iv",
        trials + 1,
        best,
        best,
        (Witness(t_star, best, vector_field=w),),
        {"p": p, "q": q, "seed": seed, "trials": trials},
    )


# -- convolution integral inequality -------------------------------------------


def _half_integrals(alpha, beta, gamma, delta, t):
    """Two smooth integrands whose adaptive integrals sum to the convolution.

    The s-integral is split at t/2; on each half the endpoint singularity is
    removed by the power substitution s = sigma^(1/(1-exponent)), under which
    the singular part contributes an exactly constant term.
    """
    half = 0.5 * t

    def left_piece():
        if beta > 0:
            m = 1.0 / (1.0 - beta)

            def g(sig):
                s = sig**m
                jac = m * sig ** (m - 1.0)
                return (1.0 + (t - s) ** (-alpha)) * np.exp(-gamma * (t - s)) * (
                    np.exp(-delta * s) * (jac + m)
                )

            return g, 0.0, half ** (1.0 / m)

        def g(s):
            # beta <= 0 here, so s**(-beta) is regular on [0, t/2]
            return (
                (1.0 + (t - s) ** (-alpha))
                * np.exp(-gamma * (t - s))
                * (1.0 + s ** (-beta))
                * np.exp(-delta * s)
            )

        return g, 0.0, half

    def right_piece():
        if alpha > 0:
            m = 1.0 / (1.0 - alpha)

            def g(sig):
                u = sig**m
                jac = m * sig ** (m - 1.0)
                return np.exp(-gamma * u) * (1.0 + (t - u) ** (-beta)) * (
                    np.exp(-delta * (t - u)) * (jac + m)
                )

            return g, 0.0, half ** (1.0 / m)

        def g(u):
            # alpha <= 0 here, so u**(-alpha) is regular on [0, t/2]
            return (
                (1.0 + u ** (-alpha))
                * np.exp(-gamma * u)
                * (1.0 + (t - u) ** (-beta))
                * np.exp(-delta * (t - u))
            )

        return g, 0.0, half

    return [left_piece(), right_piece()]


def _validate_integral_params(alpha, beta, gamma, delta):
    if not (alpha < 1 and beta < 1):
        raise ValueError("requires alpha < 1 and beta < 1")
    if not (gamma > 0 and delta > 0):
        raise ValueError("requires gamma > 0 and delta > 0")
    if gamma == delta:
        raise ValueError("requires gamma != delta")


def convolution_lhs(
    alpha: float, beta: float, gamma: float, delta: float, t: float, rel_tol: float = 1e-8
) -> float:
    """Adaptive quadrature of the singular convolution integral at time t."""
    _validate_integral_params(alpha, beta, gamma, delta)
    if not (t > 0):
        raise ValueError("t must be positive")
    total = 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for g, lo, hi in _half_integrals(alpha, beta, gamma, delta, t):
            val, abserr = sp_integrate.quad(g, lo, hi, epsabs=0.0, epsrel=1e-11, limit=300)
            total += val
            err += abserr
    if err > rel_tol * max(abs(total), 1e-300):
        raise QuadratureError(
            f"convolution quadrature did not converge: value {total:.6e}, "
            f"error estimate {err:.2e} exceeds {rel_tol:.0e} relative"
        )
    return total


def integral_envelope(alpha: float, beta: float, gamma: float, delta: float, t) -> np.ndarray:
    """Bound shape (1+t^{min(0,1-a-b)}) e^{-min(g,d) t} (1/|d-g| + 1/(1-a) + 1/(1-b))."""
    t = np.asarray(t, dtype=float)
    shape = 1.0 / abs(delta - gamma) + 1.0 / (1.0 - alpha) + 1.0 / (1.0 - beta)
    power = min(0.0, 1.0 - alpha - beta)
    with np.errstate(divide="ignore"):
        return (1.0 + t**power) * np.exp(-min(gamma, delta) * t) * shape


def check_integral_lemma(
    alpha: float, beta: float, gamma: float, delta: float, tgrid
) -> BoundCheckReport:
    """Max over the t grid of LHS / envelope, with the maximum polished locally.

    The argmax from the grid scan is refined by a bounded scalar search in
    log t between its grid neighbors, so the reported maximum is a genuine
    local maximum of the ratio rather than a grid artifact.
    """
    _validate_integral_params(alpha, beta, gamma, delta)
    tg = np.asarray(tgrid, dtype=float)
    if tg.ndim != 1 or tg.size < 1 or np.any(tg <= 0):
        raise ValueError("tgrid must be a nonempty 1-D array of positive times")

    def ratio(t):
        return convolution_lhs(alpha, beta, gamma, delta, t) / float(
            integral_envelope(alpha, beta, gamma, delta, t)
        )

    ratios = np.array([ratio(t) for t in tg])
    idx = int(np.argmax(ratios))
    best_t = float(tg[idx])
    best_r = float(ratios[idx])

    if tg.size > 1:
        # polish inside the grid only: the report is a max over the grid span
        lo = tg[idx - 1] if idx > 0 else tg[0]
        hi = tg[idx + 1] if idx + 1 < tg.size else tg[-1]
        res = sp_optimize.minimize_scalar(
            lambda lt: -ratio(float(np.exp(lt))),
            bounds=(np.log(lo), np.log(hi)),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if -res.fun > best_r:
            best_r = float(-res.fun)
            best_t = float(np.exp(res.x))

    return BoundCheckReport(
        "L24",
        int(tg.size),
        best_r,
        best_r,
        (Witness(best_t, best_r, value=convolution_lhs(alpha, beta, gamma, delta, best_t)),),
        {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta},
    )


# -- decay envelopes along a trajectory -----------------------------------------


def check_decay_envelope(
    traj: Trajectory,
    theta: float,
    eps: float,
    lambda_prime: float,
    t_min: float = 0.0,
    value_floor: float = 1e-12,
) -> tuple[BoundCheckReport, BoundCheckReport]:
    """Empirical envelope constants for ||u - ubar0||_theta and ||grad v||_theta.

    Returns the pair of reports (Env313 for the density deviation, Env316
    for the chemical gradient); ratios use the recorded theta series, so
    theta must match the trajectory's configured value.  Records whose norm
    sits below ``value_floor`` measure quadrature noise and are excluded.
    """
    if not traj.completed:
        raise ValueError("decay envelope check requires a completed trajectory")
    if not (theta >= 1):
        raise ValueError("theta must be >= 1")
    if abs(theta - traj.theta) > 1e-12:
        raise ValueError(
            f"theta = {theta} was not recorded on this trajectory (theta = {traj.theta})"
        )
    lam1 = lambda1(traj.final_state.grid)
    if not (0.0 < lambda_prime < lam1):
        raise ValueError(f"requires 0 < lambda_prime < lambda1 = {lam1:.6g}")
    if not (eps > 0):
        raise ValueError("eps must be positive")

    pow_u = -1.0 + SPACE_DIM / (2.0 * theta)
    pow_v = -0.5 + SPACE_DIM / (2.0 * theta)

    def scan(series, power, estimate_id):
        best_r, best_t, best_v, n_used = 0.0, 0.0, 0.0, 0
        for t, value in series:
            if t < t_min or value <= value_floor:
                continue
            if t == 0.0 and power < 0.0:
                continue  # envelope is infinite there; the ratio contributes 0
            env = eps * (1.0 + t**power) * np.exp(-lambda_prime * t)
            r = value / env
            n_used += 1
            if r > best_r:
                best_r, best_t, best_v = r, t, value
        return BoundCheckReport(
            estimate_id,
            n_used,
            best_r,
            best_r,
            (Witness(best_t, best_r, value=best_v),),
            {
                "theta": theta,
                "eps": eps,
                "lambda_prime": lambda_prime,
                "power": power,
                "t_min": t_min,
            },
        )

    series_u = [(r.t, r.ltheta_dev_u) for r in traj.records]
    series_v = [(r.t, r.ltheta_grad_v) for r in traj.records]
    return scan(series_u, pow_u, "Env313"), scan(series_v, pow_v, "Env316")


# -- witness reproduction --------------------------------------------------------


def reevaluate_witness(report: BoundCheckReport) -> float:
    """Recompute the ratio of a report's witness from its stored arguments.

    Uses the same coefficient-space evaluation as the checkers: the left
    sides are synthesized once from exact (decayed) coefficients, and the
    mean-zero hypothesis of the first and fourth estimates is enforced
    exactly on the analyzed spectrum.
    """
    wit = report.witnesses[0]
    eid = report.estimate_id
    if eid in ("L21i", "L21ii", "L21iii", "L21iv"):
        p = report.params["p"]
        q = report.params["q"]
        t = wit.t
        if eid == "L21iv":
            w = wit.vector_field
            grid = w.grid
            plan = plan_for(grid)
            div_c = plan.div_coeffs(w.xcomp2d, w.ycomp2d)
            left = lp_norm(ScalarField(grid, plan.inv(div_c * np.exp(-plan.mu * t))), p)
            denom_norm = vector_lp_norm(w, q)
            power = 0.5 + (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)
        else:
            w = wit.scalar_field
            grid = w.grid
            plan = plan_for(grid)
            c = plan.fwd(w.values2d)
            if eid == "L21i":
                c[0, 0] = 0.0  # the estimate's hypothesis space
                left = lp_norm(ScalarField(grid, plan.inv(c * np.exp(-plan.mu * t))), p)
                denom_norm = lp_norm(w, q)
                power = (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)
            else:
                left = _grad_norm_of_heat(plan, grid, c, t, p)
                if eid == "L21ii":
                    denom_norm = lp_norm(w, q)
                    power = 0.5 + (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)
                else:
                    gx, gy = plan.grad_from_coeffs(c)
                    denom_norm = vector_lp_norm(VectorField(grid, gx, gy), q)
                    power = (SPACE_DIM / 2.0) * (1.0 / q - 1.0 / p)
        env = float(_envelope(np.asarray(t), power, lambda1(grid))) * denom_norm
        return left / env
    if eid == "L24":
        pr = report.params
        lhs = convolution_lhs(pr["alpha"], pr["beta"], pr["gamma"], pr["delta"], wit.t)
        return lhs / float(
            integral_envelope(pr["alpha"], pr["beta"], pr["gamma"], pr["delta"], wit.t)
        )
    if eid in ("Env313", "Env316"):
        pr = report.params
        env = pr["eps"] * (1.0 + wit.t ** pr["power"]) * np.exp(
            -pr["lambda_prime"] * wit.t
        )
        return wit.value / env
    raise ValueError(f"unknown estimate id {eid!r}")
