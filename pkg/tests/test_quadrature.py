import numpy as np
import pytest
from scipy import integrate as sint

from maxlenqm import (ConfigError, DeformationParams, DivergentMomentError, ThetaChart, ZeroNormError, build_grid,
                      deformation_factor, hermite_state, inner_product, integrate, normalize)
from maxlenqm.errors import NonFiniteError
from maxlenqm.quadrature import divergence_check, graded_grid, integrate_checked, norm_squared


def test_measure_mass_against_antiderivative(params, grid):
    # int dx / (1 - tau x + tau^2 x^2) = 2 pi / (tau sqrt3)
    exact = 2 * np.pi / (params.tau * np.sqrt(3))
    got = integrate(lambda x: np.ones_like(x), grid).real
    assert abs(got - exact) / exact < 1e-10


@pytest.mark.parametrize("tau", [0.1, 1.0])
def test_deformed_integral_matches_scipy(tau):
    params = DeformationParams(tau=tau)
    grid = build_grid(ThetaChart(params))
    f = lambda x: np.exp(-(tau * x - 0.3) ** 2) * (1 + np.cos(tau * x))  # noqa: E731
    want, _ = sint.quad(lambda x: f(x) / deformation_factor(x, params), -np.inf, np.inf, epsabs=1e-13)
    assert integrate(f, grid).real == pytest.approx(want, rel=1e-10)


@pytest.mark.parametrize("tau", [0.1, 1.0])
def test_flat_integral_matches_scipy(tau):
    params = DeformationParams(tau=tau)
    grid = build_grid(ThetaChart(params))
    f = lambda x: np.exp(-((tau * x) ** 2)) * (tau * x) ** 2  # noqa: E731
    want, _ = sint.quad(f, -np.inf, np.inf, epsabs=1e-14)
    assert integrate(f, grid, "flat").real == pytest.approx(want, rel=1e-10)


def test_inner_product_conjugate_symmetric(params, grid):
    psi = hermite_state(params, k=1, sigma=0.5, kick=1.0)
    phi = hermite_state(params, k=2, sigma=0.7, center=0.2)
    assert inner_product(psi, phi, grid) == pytest.approx(np.conj(inner_product(phi, psi, grid)), abs=1e-14)
    a = inner_product(psi.scaled(2j), phi, grid)
    assert a == pytest.approx(-2j * inner_product(psi, phi, grid), abs=1e-13)


def test_normalize(params, grid):
    psi = normalize(hermite_state(params, k=3, sigma=0.6), grid)
    assert norm_squared(psi, grid) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ZeroNormError):
        normalize(psi.scaled(0.0), grid)


def test_grid_validation():
    chart = ThetaChart(DeformationParams())
    with pytest.raises(ConfigError):
        build_grid(chart, panels=0)
    with pytest.raises(ConfigError):
        build_grid(chart, order=1)
    with pytest.raises(ConfigError):
        build_grid(chart, window=(chart.theta_max + 1, chart.theta_max + 2))
    with pytest.raises(ConfigError):
        integrate(lambda x: x, build_grid(chart), measure="weird")


def test_window_grid_stays_in_window():
    chart = ThetaChart(DeformationParams(tau=1e-6))
    g = build_grid(chart, 32, 16, window=(-20.0, 20.0))
    assert g.nodes.min() > -20 and g.nodes.max() < 20
    assert np.sum(g.weights) == pytest.approx(40.0)


def test_graded_grid_reaches_guard(params):
    chart = ThetaChart(params)
    g = graded_grid(chart, 1e-9)
    assert g.nodes[0] - chart.theta_min < 1e-8 * chart.length
    assert np.sum(g.weights) == pytest.approx(chart.length * (1 - 2e-9), rel=1e-12)


def test_divergence_detected_for_growing_integrand(params, grid):
    # x^2 against dx/D grows linearly in the cutoff
    with pytest.raises(DivergentMomentError):
        divergence_check(lambda x: x**2, grid, name="x^2")
    # |x| / D is only log-divergent; still caught
    with pytest.raises(DivergentMomentError):
        integrate_checked(lambda x: np.abs(x), grid, "deformed")


def test_convergent_integral_passes_check(params, grid):
    val = integrate_checked(lambda x: np.exp(-(params.tau * x) ** 2), grid, name="gauss")
    assert np.isfinite(val)


def test_nonfinite_integrand_raises(grid):
    with pytest.raises(NonFiniteError):
        integrate(lambda x: np.full_like(x, np.nan), grid)
