import numpy as np
import pytest
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from kslab import (
    ScalarField,
    VectorField,
    dct_forward,
    dual_w12_norm,
    gradient,
    lp_norm,
    make_grid,
    mean,
    sample,
    vector_lp_norm,
)
from kslab.spectral import plan_for


@pytest.fixture(scope="module")
def grid64():
    return make_grid(64, 64, 1, 1)


def test_lp_norm_constant(grid64):
    f = sample(lambda x, y: np.full_like(x, -2.0), grid64)
    for p in (1, 2, 3.5, np.inf):
        assert lp_norm(f, p) == pytest.approx(2.0, rel=1e-13)


def test_lp_norm_cosine_l2(grid64):
    f = sample(lambda x, y: np.cos(np.pi * x), grid64)
    assert lp_norm(f, 2) == pytest.approx(np.sqrt(0.5), rel=1e-6)


def test_lp_norm_cosine_linf(grid64):
    f = sample(lambda x, y: np.cos(np.pi * x), grid64)
    assert lp_norm(f, np.inf) == pytest.approx(np.cos(np.pi * grid64.hx / 2), rel=1e-15)


def test_lp_norm_rejects_bad_p(grid64):
    f = sample(lambda x, y: np.ones_like(x), grid64)
    with pytest.raises(ValueError):
        lp_norm(f, 0.5)
    with pytest.raises(ValueError):
        vector_lp_norm(VectorField(grid64, f.values, f.values), 0.99)


def test_vector_lp_norm(grid64):
    z = VectorField(grid64, np.zeros(grid64.size), np.zeros(grid64.size))
    assert vector_lp_norm(z, 2) == 0.0
    g = gradient(sample(lambda x, y: np.cos(np.pi * x), grid64))
    assert vector_lp_norm(g, 2) == pytest.approx(np.pi * np.sqrt(0.5), rel=1e-6)
    ex = VectorField(grid64, np.ones(grid64.size), np.zeros(grid64.size))
    assert vector_lp_norm(ex, np.inf) == 1.0


def test_mean(grid64):
    assert mean(sample(lambda x, y: np.full_like(x, 3.0), grid64)) == pytest.approx(3.0)
    assert abs(mean(sample(lambda x, y: np.cos(np.pi * x), grid64))) <= 1e-14
    f = sample(lambda x, y: 1.0 + np.cos(np.pi * x), grid64)
    assert mean(f) == pytest.approx(1.0, abs=1e-14)


def test_dual_norm_constant(grid64):
    f = sample(lambda x, y: np.full_like(x, -1.5), grid64)
    assert dual_w12_norm(f) == pytest.approx(1.5, rel=1e-13)


def test_dual_norm_single_mode(grid64):
    f = sample(lambda x, y: np.cos(np.pi * x), grid64)
    expected = np.sqrt(0.5 / (1.0 + np.pi**2))
    assert dual_w12_norm(f) == pytest.approx(expected, rel=1e-12)


def _dual_norm_fd_oracle(grid, values2d):
    """Independent dual-norm path: dense Galerkin/finite-difference solve of
    (I - Laplacian) z = f with reflected ghost cells, then sqrt(int f z)."""
    nx, ny = grid.nx, grid.ny
    hx, hy = grid.hx, grid.hy

    def lap1d(n, h):
        main = np.full(n, -2.0)
        main[0] = main[-1] = -1.0  # zero-flux reflection at the faces
        return sp.diags([np.ones(n - 1), main, np.ones(n - 1)], [-1, 0, 1]) / h**2

    Lx = lap1d(nx, hx)
    Ly = lap1d(ny, hy)
    lap = sp.kron(sp.identity(ny), Lx) + sp.kron(Ly, sp.identity(nx))
    A = sp.identity(nx * ny) - lap
    f = values2d.reshape(-1)
    z = spla.spsolve(A.tocsc(), f)
    return float(np.sqrt(hx * hy * np.dot(f, z)))


def test_dual_norm_two_modes_against_fd_solve(grid64):
    # two-mode Parseval value, cross-checked against the independent solve
    c = 0.7
    f = sample(lambda x, y, c=c: c + np.cos(np.pi * x), grid64)
    expected = np.sqrt(c**2 + 0.5 / (1.0 + np.pi**2))
    got = dual_w12_norm(f)
    assert got == pytest.approx(expected, rel=1e-12)
    oracle = _dual_norm_fd_oracle(grid64, f.values2d)
    assert got == pytest.approx(oracle, rel=1e-3)


def test_dual_norm_random_against_fd_solve():
    grid = make_grid(32, 32, 1, 1)
    plan = plan_for(grid)
    rng = np.random.default_rng(1)
    c = rng.standard_normal((grid.ny, grid.nx))
    # smooth field: keep only low modes so the h^2 gap stays small
    keep = 6
    c[keep:, :] = 0.0
    c[:, keep:] = 0.0
    vals = plan.inv(c)
    f = ScalarField(grid, vals)
    got = dual_w12_norm(f)
    oracle = _dual_norm_fd_oracle(grid, f.values2d)
    assert got == pytest.approx(oracle, rel=5e-3)


def test_holder_monotonicity_unit_area(grid64):
    rng = np.random.default_rng(2)
    ps = [1.0, 1.5, 2.0, 3.0, 6.0, np.inf]
    for _ in range(10):
        f = ScalarField(grid64, rng.standard_normal(grid64.size))
        vals = [lp_norm(f, p) for p in ps]
        for a, b in zip(vals, vals[1:]):
            assert a <= b * (1 + 1e-12)


def test_dual_norm_below_l2_equality_on_constants(grid64):
    rng = np.random.default_rng(4)
    for _ in range(10):
        f = ScalarField(grid64, rng.standard_normal(grid64.size))
        assert dual_w12_norm(f) <= lp_norm(f, 2) * (1 + 1e-12)
    f = sample(lambda x, y: np.full_like(x, 2.2), grid64)
    assert dual_w12_norm(f) == pytest.approx(lp_norm(f, 2), rel=1e-13)


def test_parseval(grid64):
    plan = plan_for(grid64)
    rng = np.random.default_rng(6)
    f = ScalarField(grid64, rng.standard_normal(grid64.size))
    c = dct_forward(f).coeffs2d
    spectral = float(np.sum(c * c * plan.weight))
    assert lp_norm(f, 2) ** 2 == pytest.approx(spectral, rel=1e-12)
