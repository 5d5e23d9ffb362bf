import numpy as np
import pytest

from _oracles import midpoint_convolution

from kslab import gradient, lambda1, make_grid, sample
from kslab.dynamics import ScalarSensitivity, SimConfig, run
from kslab.verification import (
    BoundCheckReport,
    QuadratureError,
    Witness,
    check_decay_envelope,
    check_integral_lemma,
    check_semigroup_i,
    check_semigroup_ii,
    check_semigroup_iii,
    check_semigroup_iv,
    convolution_lhs,
    integral_envelope,
    reevaluate_witness,
)


@pytest.fixture(scope="module")
def grid64():
    return make_grid(64, 64, 1, 1)


def eigenmode(grid):
    return sample(lambda x, y: np.cos(np.pi * x), grid)


# -- single-mode ratio arithmetic (through the witness path) -------------------


def test_ratio_i_eigenmode_is_half(grid64):
    w = eigenmode(grid64)
    for t in (0.05, 0.7, 3.0):
        rep = BoundCheckReport(
            "L21i", 1, 0.5, 0.5, (Witness(t, 0.5, scalar_field=w),), {"p": 2.0, "q": 2.0}
        )
        assert reevaluate_witness(rep) == pytest.approx(0.5, rel=1e-10)


def test_ratio_ii_eigenmode_formula(grid64):
    w = eigenmode(grid64)
    for t in (0.1, 1.0, 9.0):
        rep = BoundCheckReport(
            "L21ii", 1, 0.0, 0.0, (Witness(t, 0.0, scalar_field=w),), {"p": 2.0, "q": 2.0}
        )
        expected = np.pi / (1.0 + t ** (-0.5))
        assert reevaluate_witness(rep) == pytest.approx(expected, rel=1e-9)


def test_ratio_iii_eigenmode_is_half(grid64):
    w = eigenmode(grid64)
    rep = BoundCheckReport(
        "L21iii", 1, 0.5, 0.5, (Witness(0.4, 0.5, scalar_field=w),), {"p": 2.0, "q": 2.0}
    )
    assert reevaluate_witness(rep) == pytest.approx(0.5, rel=1e-10)


def test_ratio_iv_gradient_field_formula(grid64):
    w = gradient(eigenmode(grid64))
    for t in (0.2, 2.0):
        rep = BoundCheckReport(
            "L21iv", 1, 0.0, 0.0, (Witness(t, 0.0, vector_field=w),), {"p": 2.0, "q": 2.0}
        )
        expected = np.pi / (1.0 + t ** (-0.5))
        assert reevaluate_witness(rep) == pytest.approx(expected, rel=1e-9)


# -- report-level behavior ------------------------------------------------------


def test_semigroup_i_contraction_p2_q2(grid64):
    rep = check_semigroup_i(grid64, 2, 2, trials=50, seed=0)
    assert rep.max_ratio <= 1.0 + 1e-10
    # the first-eigenmode probe pins the constant at 1/2 exactly
    assert rep.max_ratio >= 0.5 - 1e-10
    assert rep.estimate_id == "L21i" and rep.samples == 51


def test_semigroup_reports_finite_and_reproducible(grid64):
    reports = [
        check_semigroup_i(grid64, np.inf, 1, trials=20, seed=0),
        check_semigroup_ii(grid64, 4, 2, trials=20, seed=0),
        check_semigroup_iii(grid64, 4, 2, trials=20, seed=0),
        check_semigroup_iv(grid64, np.inf, 2, trials=20, seed=0),
    ]
    for rep in reports:
        assert np.isfinite(rep.max_ratio) and rep.max_ratio > 0
        assert rep.empirical_constant == rep.max_ratio
        again = reevaluate_witness(rep)
        assert again == pytest.approx(rep.max_ratio, rel=1e-10)


def test_semigroup_constant_monotone_in_trials(grid64):
    small = check_semigroup_ii(grid64, 2, 2, trials=15, seed=3)
    large = check_semigroup_ii(grid64, 2, 2, trials=45, seed=3)
    assert large.max_ratio >= small.max_ratio - 1e-15


def test_semigroup_param_validation(grid64):
    with pytest.raises(ValueError):
        check_semigroup_i(grid64, 1, 2, trials=5)  # p < q
    with pytest.raises(ValueError):
        check_semigroup_i(grid64, 2, 0.5, trials=5)  # q < 1
    with pytest.raises(ValueError):
        check_semigroup_iii(grid64, 3, 1.5, trials=5)  # q < 2
    with pytest.raises(ValueError):
        check_semigroup_iii(grid64, np.inf, 2, trials=5)  # p must be < inf
    with pytest.raises(ValueError):
        check_semigroup_iv(grid64, 2, 1, trials=5)  # q must be > 1
    with pytest.raises(ValueError):
        check_semigroup_i(grid64, 2, 2, trials=0)


# -- convolution integral --------------------------------------------------------


def test_convolution_closed_form():
    got = convolution_lhs(0.0, 0.0, 1.0, 2.0, 1.0)
    expected = 4.0 * (np.exp(-1.0) - np.exp(-2.0))
    assert got == pytest.approx(expected, abs=1e-8)


def test_convolution_against_midpoint_oracle():
    for t in (0.1, 1.0, 10.0):
        adaptive = convolution_lhs(0.5, 0.5, 1.0, 2.0, t)
        oracle = midpoint_convolution(0.5, 0.5, 1.0, 2.0, t)
        assert adaptive == pytest.approx(oracle, rel=1e-6)


def test_convolution_negative_exponents_against_oracle():
    adaptive = convolution_lhs(-1.0, 0.9, 0.1, 5.0, 2.5)
    oracle = midpoint_convolution(-1.0, 0.9, 0.1, 5.0, 2.5)
    assert adaptive == pytest.approx(oracle, rel=1e-6)


def test_integral_lemma_report_and_witness():
    tgrid = np.geomspace(1e-2, 1e2, 9)
    rep = check_integral_lemma(0.5, 0.5, 1.0, 2.0, tgrid)
    assert rep.estimate_id == "L24"
    assert np.isfinite(rep.max_ratio) and 0 < rep.max_ratio <= 10
    assert reevaluate_witness(rep) == pytest.approx(rep.max_ratio, rel=1e-10)


def test_integral_lemma_max_stable_under_grid_refinement():
    base = np.geomspace(1e-2, 1e2, 9)
    refined = np.geomspace(1e-2, 1e2, 17)  # inserts the log midpoints
    r1 = check_integral_lemma(0.5, 0.5, 1.0, 2.0, base)
    r2 = check_integral_lemma(0.5, 0.5, 1.0, 2.0, refined)
    assert abs(r2.max_ratio - r1.max_ratio) < 1e-6


def test_integral_lemma_param_validation():
    with pytest.raises(ValueError):
        check_integral_lemma(1.0, 0.0, 1.0, 2.0, [1.0])  # alpha not < 1
    with pytest.raises(ValueError):
        check_integral_lemma(0.0, 0.0, 1.0, 1.0, [1.0])  # gamma == delta
    with pytest.raises(ValueError):
        check_integral_lemma(0.0, 0.0, -1.0, 2.0, [1.0])
    with pytest.raises(ValueError):
        check_integral_lemma(0.0, 0.0, 1.0, 2.0, [])
    with pytest.raises(ValueError):
        convolution_lhs(0.0, 0.0, 1.0, 2.0, -1.0)


# -- decay envelopes --------------------------------------------------------------


def _diffusion_traj(grid, m=0.1, eps=1e-3, t_end=2.0):
    u0 = sample(lambda x, y: m + eps * np.cos(np.pi * x), grid)
    v0 = sample(lambda x, y: np.full_like(x, m), grid)
    cfg = SimConfig(dt=1e-3, t_end=t_end, record_every=10)
    return run(u0, v0, ScalarSensitivity(0.0), cfg)


def test_envelope_zero_deviation(grid64):
    m = 0.5
    u0 = sample(lambda x, y: np.full_like(x, m), grid64)
    traj = run(u0, u0, ScalarSensitivity(1.0), SimConfig(dt=1e-3, t_end=0.2))
    rep_u, rep_v = check_decay_envelope(traj, 2.0, eps=1e-2, lambda_prime=1.0)
    assert rep_u.max_ratio == 0.0 and rep_v.max_ratio == 0.0


def test_envelope_pure_diffusion_closed_form(grid64):
    eps = 1e-3
    lam_p = 0.9 * np.pi**2
    traj = _diffusion_traj(grid64, eps=eps)
    rep_u, _rep_v = check_decay_envelope(traj, 2.0, eps=eps, lambda_prime=lam_p, t_min=0.1)
    # closed form of the same max over the recorded times
    ts = np.array([r.t for r in traj.records])
    ts = ts[ts >= 0.1]
    vals = eps * np.sqrt(0.5) * np.exp(-np.pi**2 * ts)
    env = eps * (1.0 + ts ** (-0.5)) * np.exp(-lam_p * ts)
    usable = vals > 1e-12
    expected = np.max(vals[usable] / env[usable])
    assert rep_u.max_ratio == pytest.approx(expected, rel=1e-6)
    assert reevaluate_witness(rep_u) == pytest.approx(rep_u.max_ratio, rel=1e-10)


def test_envelope_validation(grid64):
    traj = _diffusion_traj(grid64, t_end=0.5)
    lam1 = lambda1(grid64)
    with pytest.raises(ValueError):
        check_decay_envelope(traj, 2.0, eps=1e-3, lambda_prime=lam1)  # not < lambda1
    with pytest.raises(ValueError):
        check_decay_envelope(traj, 3.0, eps=1e-3, lambda_prime=1.0)  # theta not recorded
    with pytest.raises(ValueError):
        check_decay_envelope(traj, 2.0, eps=0.0, lambda_prime=1.0)
