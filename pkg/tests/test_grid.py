import numpy as np
import pytest

from kslab import ScalarField, integrate, make_grid, sample


def test_make_grid_cell_centers():
    g = make_grid(4, 4, 1, 1)
    assert g.hx == 0.25 and g.hy == 0.25
    assert g.xcoords()[0] == pytest.approx(0.125, abs=0)
    assert g.ycoords()[0] == pytest.approx(0.125, abs=0)
    assert np.all(g.xcoords() > 0) and np.all(g.xcoords() < g.lx)


def test_make_grid_size():
    g = make_grid(64, 64, 1, 1)
    assert g.size == 4096


@pytest.mark.parametrize(
    "nx,ny,lx,ly",
    [(3, 4, 1, 1), (4, 5, 1, 1), (2, 4, 1, 1), (4, 4, 0, 1), (4, 4, 1, -2.0)],
)
def test_make_grid_rejects_bad_input(nx, ny, lx, ly):
    with pytest.raises(ValueError):
        make_grid(nx, ny, lx, ly)


def test_integrate_constant():
    g = make_grid(16, 16, 1, 1)
    f = sample(lambda x, y: 0 * x + 2.5, g)
    assert integrate(f) == pytest.approx(2.5, rel=1e-15)


def test_integrate_cosine_cancels():
    for nx in (8, 16, 64):
        g = make_grid(nx, nx, 1, 1)
        f = sample(lambda x, y: np.cos(np.pi * x), g)
        assert abs(integrate(f)) <= 1e-14


def test_integrate_linear_is_exact():
    g = make_grid(64, 64, 1, 1)
    f = sample(lambda x, y: x, g)
    assert integrate(f) == pytest.approx(0.5, abs=1e-14)


def test_integrate_rejects_nonfinite():
    g = make_grid(4, 4, 1, 1)
    vals = np.ones(16)
    vals[3] = np.inf
    f = ScalarField(g, vals, blowup_witness=True)
    with pytest.raises(ValueError):
        integrate(f)


def test_scalar_field_rejects_nonfinite_unless_witness():
    g = make_grid(4, 4, 1, 1)
    vals = np.ones(16)
    vals[0] = np.nan
    with pytest.raises(ValueError):
        ScalarField(g, vals)
    ScalarField(g, vals, blowup_witness=True)


def test_sample_constant_and_eigenmode():
    g = make_grid(8, 8, 1, 1)
    ones = sample(lambda x, y: np.ones_like(x), g)
    assert np.all(ones.values == 1.0)
    f = sample(lambda x, y: np.cos(np.pi * x) * np.cos(np.pi * y), g)
    X, Y = g.meshes()
    assert np.allclose(f.values2d, np.cos(np.pi * X) * np.cos(np.pi * Y), atol=0)


def test_sample_reports_offending_node():
    g = make_grid(4, 4, 1, 1)
    with pytest.raises(ValueError, match=r"non-finite.*i=0, j=0"):
        sample(lambda x, y: x / 0.0, g)


def test_sample_python_scalar_exception_names_node():
    g = make_grid(4, 4, 1, 1)

    def bad(x, y):
        # non-vectorizable and raising: forces the scalar path
        if isinstance(x, np.ndarray):
            raise TypeError("no arrays")
        return 1 / 0

    with pytest.raises(ValueError, match=r"i=0, j=0"):
        sample(bad, g)


def test_integrate_is_linear():
    g = make_grid(32, 16, 2.0, 1.0)
    rng = np.random.default_rng(7)
    fv = rng.standard_normal(g.size)
    gv = rng.standard_normal(g.size)
    a, b = 1.7, -0.3
    lhs = integrate(ScalarField(g, a * fv + b * gv))
    rhs = a * integrate(ScalarField(g, fv)) + b * integrate(ScalarField(g, gv))
    assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-13)


def test_constant_roundtrip_exact():
    g = make_grid(10, 6, 3.0, 0.5)
    for c in (-2.0, 0.0, 1e-3, 7.25):
        f = sample(lambda x, y, c=c: np.full_like(x, c), g)
        assert integrate(f) == pytest.approx(c * g.area, rel=4e-16, abs=1e-18)
