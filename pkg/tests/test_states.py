import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sint

from maxlenqm import (DeformationParams, ThetaChart, apply_P, build_grid, deformation_factor, eigenstate,
                      inner_product, kinetic_energy, lattice_eta, orthogonal_eta, overlap_closed_form,
                      overlap_exact)
from maxlenqm.states import eigenstate_amplitude

SQRT3 = np.sqrt(3.0)


def test_amplitude_value():
    assert eigenstate_amplitude(DeformationParams(tau=1.0)) == pytest.approx(0.5250376, abs=1e-7)


@pytest.mark.parametrize("tau", [0.01, 0.1, 1.0, 10.0])
@pytest.mark.parametrize("hbar", [0.5, 1.0])
def test_eigenstate_normalized(tau, hbar):
    params = DeformationParams(tau=tau, hbar=hbar)
    grid = build_grid(ThetaChart(params))
    a2 = eigenstate_amplitude(params) ** 2
    assert abs(a2 * np.sum(grid.weights) * hbar - 1.0) < 1e-10
    phi = eigenstate(2.3 * tau * hbar, params)
    assert abs(inner_product(phi, phi, grid) - 1.0) < 1e-10


def test_eigen_relation_pointwise(params):
    x = np.linspace(-30, 30, 61) / params.tau
    for n in range(-10, 11):
        eta = lattice_eta(n, params)
        phi = eigenstate(eta, params)
        np.testing.assert_allclose(apply_P(phi, params)(x), eta * phi(x), atol=1e-12 * max(1, abs(eta)))


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_overlap_exact_matches_quadrature(a, b):
    params = DeformationParams(tau=0.7)
    grid = build_grid(ThetaChart(params))
    eta, eta_p = a * params.tau, b * params.tau
    quad = inner_product(eigenstate(eta_p, params), eigenstate(eta, params), grid)
    assert abs(quad - overlap_exact(eta, eta_p, params)) < 1e-10


def test_overlap_exact_matches_scipy_in_x():
    params = DeformationParams(tau=0.5)
    eta, eta_p = 0.9, 0.2
    a2 = eigenstate_amplitude(params) ** 2
    th = lambda x: ThetaChart(params).scale * np.arctan2(SQRT3 * params.tau * x, 2 - params.tau * x)  # noqa: E731
    integrand = lambda x, part: part(a2 * np.exp(1j * (eta - eta_p) * th(x)) / deformation_factor(x, params))  # noqa: E731
    re, _ = sint.quad(integrand, -np.inf, np.inf, args=(np.real,), epsabs=1e-13, limit=400)
    im, _ = sint.quad(integrand, -np.inf, np.inf, args=(np.imag,), epsabs=1e-13, limit=400)
    assert complex(re, im) == pytest.approx(overlap_exact(eta, eta_p, params), abs=1e-9)


def test_literal_kernel_arithmetic():
    params = DeformationParams(tau=1.0)
    d = 0.4
    arg = 2 * np.pi * d / SQRT3
    assert overlap_closed_form(d, 0.0, params) == pytest.approx(np.sin(arg) / arg, rel=1e-15)
    assert overlap_closed_form(0.0, 0.0, params) == 1.0
    # zeros at multiples of tau hbar sqrt3 / 2
    assert abs(overlap_closed_form(lattice_eta(np.arange(1, 7), params), 0.0, params)).max() < 1e-15


def test_literal_kernel_disagrees_with_integral():
    """Regression record: the sinc kernel with argument 2 pi d / (tau hbar sqrt3) is not the overlap integral.

    The integral over the chart of length L = 2 pi / (tau hbar sqrt3) gives
    sinc(d L / 2) times a phase, i.e. half that argument; adjacent lattice
    states at spacing tau hbar sqrt3 / 2 overlap with modulus 2/pi.
    """
    params = DeformationParams(tau=1.0)
    grid = build_grid(ThetaChart(params))
    e1 = lattice_eta(1, params)
    quad = inner_product(eigenstate(0.0, params), eigenstate(e1, params), grid)
    assert abs(quad) == pytest.approx(2 / np.pi, rel=1e-12)
    assert abs(overlap_closed_form(e1, 0.0, params)) < 1e-15


def test_orthogonal_lattice(params, grid):
    ns = range(-20, 21)
    phis = {n: eigenstate(orthogonal_eta(n, params), params) for n in ns}
    for n in (-20, -3, 0, 1, 20):
        for m in ns:
            val = inner_product(phis[m], phis[n], grid)
            assert abs(val - (n == m)) < 1e-10


@given(st.floats(-50, 50))
def test_overlap_exact_properties(d):
    params = DeformationParams(tau=1.0)
    v = overlap_exact(d, 0.0, params)
    assert abs(v) <= 1.0 + 1e-15
    assert overlap_exact(0.0, d, params) == pytest.approx(np.conj(v), abs=1e-15)


def test_small_argument_branch_matches_direct_formula():
    params = DeformationParams(tau=1.0)
    for d in (1e-9, 3e-7, 1e-6):
        a = 2 * np.pi * d / SQRT3
        assert overlap_closed_form(d, 0.0, params) == pytest.approx(np.sin(a) / a, rel=1e-15)
        b = a / 2
        assert overlap_exact(d, 0.0, params) == pytest.approx(np.sin(b) / b * np.exp(1j * b / 3), rel=1e-15)


def test_lattice_conventions():
    params = DeformationParams(tau=1.0)
    assert lattice_eta(2, params) == pytest.approx(SQRT3)
    np.testing.assert_allclose(np.diff(lattice_eta(np.arange(5), params)), SQRT3 / 2)
    with pytest.raises(ValueError):
        lattice_eta(-1, params, convention="N")
    assert orthogonal_eta(1, params) == pytest.approx(SQRT3)


def test_kinetic_energy_lattice(params, grid):
    for n in range(-10, 11):
        eta = lattice_eta(n, params)
        e = kinetic_energy(eta, params, grid)
        if n == 0:
            assert abs(e) < 1e-14
        else:
            assert e == pytest.approx(eta**2 / 2, rel=1e-8)


def test_kinetic_energy_unit_example():
    params = DeformationParams(tau=1.0, hbar=1.0, mass=1.0)
    grid = build_grid(ThetaChart(params))
    assert kinetic_energy(lattice_eta(2, params), params, grid) == pytest.approx(1.5, rel=1e-12)
