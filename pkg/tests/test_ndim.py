import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxlenqm import AxisSingularityError, ClosedFormUnavailableError, ConfigError, DeformationParams, apply_P
from maxlenqm.algebra import GeneralDeformation
from maxlenqm.families import hermite_state
from maxlenqm.ndim import (NDimParams, NDimWaveFunction, algebra_residual, apply_P_j, commutator_PP_closed,
                           commutator_PP_direct, commutator_PP_expanded, commutator_XX, jacobi_residual,
                           pp_coefficient, random_state_nd, sample_off_axis)

TAUS = (0.1, 1.0)


def cases(seed, dims=(2, 3), tau=0.5, norm_kind="euclidean", deformation=None, count=100):
    rng = np.random.default_rng(seed)
    for dim in dims:
        nd = NDimParams(dim, DeformationParams(tau=tau), norm_kind, deformation)
        yield nd, random_state_nd(dim, tau, rng), sample_off_axis(dim, tau, rng, count, nd)


@pytest.mark.parametrize("tau", TAUS)
def test_xp_algebra_pointwise(tau):
    for nd, psi, pts in cases(1, tau=tau):
        scale = np.max(np.abs(psi(pts)))
        for i in range(nd.dim):
            for j in range(nd.dim):
                assert np.max(np.abs(algebra_residual(i, j, psi, nd)(pts))) < 1e-10 * scale


def test_positions_commute():
    for nd, psi, pts in cases(2):
        scale = np.max(np.abs(pts)) ** 2 * np.max(np.abs(psi(pts)))
        assert np.max(np.abs(commutator_XX(0, 1, psi)(pts))) <= 1e-15 * scale


@pytest.mark.parametrize("tau", TAUS)
def test_pp_closed_form_matches_composition(tau):
    for nd, psi, pts in cases(3, tau=tau):
        for i, j in [(0, 1), (1, 0), (nd.dim - 1, 0)]:
            direct = commutator_PP_direct(i, j, psi, nd)(pts)
            closed = commutator_PP_closed(i, j, psi, nd)(pts)
            expanded = commutator_PP_expanded(i, j, psi, nd)(pts)
            floor = 1e-12 * np.max(np.abs(direct))
            assert np.max(np.abs(closed - direct) / (np.abs(direct) + floor)) < 1e-6
            assert np.max(np.abs(expanded - direct) / (np.abs(direct) + floor)) < 1e-6


def test_pp_nonzero_and_antisymmetric():
    for nd, psi, pts in cases(4):
        a = commutator_PP_direct(0, 1, psi, nd)(pts)
        b = commutator_PP_direct(1, 0, psi, nd)(pts)
        assert np.max(np.abs(a)) > 1e-3 * np.max(np.abs(psi(pts)))
        np.testing.assert_allclose(a, -b, atol=1e-12 * np.max(np.abs(a)))


@pytest.mark.parametrize("tau", TAUS)
def test_jacobi_identity(tau):
    for nd, psi, pts in cases(5, tau=tau, count=30):
        scale = nd.base.hbar**3 * tau**2 * np.max(np.abs(psi(pts)))
        for ijk in [(0, 1, 0), (0, 1, 1), (1, 0, nd.dim - 1)]:
            assert np.max(np.abs(jacobi_residual(*ijk, psi, nd)(pts))) < 1e-7 * scale


@given(st.floats(0.01, 5.0), st.sampled_from(TAUS))
def test_one_dim_reduction_positive_axis(u, tau):
    params = DeformationParams(tau=tau)
    psi1 = hermite_state(params, k=1, sigma=0.5, center=0.5)
    psin = NDimWaveFunction(lambda p, k: psi1.taylor(p[0], k), 1)
    x = np.array([u / tau])
    a = apply_P(psi1, params)(x)
    b = apply_P_j(0, psin, NDimParams(1, params))(x[None])
    assert abs(a - b)[0] <= 1e-12 * max(1.0, abs(a[0]))


def test_one_dim_negative_axis_differs():
    # |x| replaces x inside D, so for x < 0 the 1-dim operator is not recovered
    params = DeformationParams(tau=1.0)
    psi1 = hermite_state(params, k=0, sigma=0.5)
    psin = NDimWaveFunction(lambda p, k: psi1.taylor(p[0], k), 1)
    x = np.array([-0.7])
    assert abs(apply_P(psi1, params)(x) - apply_P_j(0, psin, NDimParams(1, params))(x[None]))[0] > 1e-3


def test_general_standard_equals_builtin():
    tau = 0.5
    gd = GeneralDeformation.standard(tau)
    (nd, psi, pts), = cases(6, dims=(3,), tau=tau)
    ndg = NDimParams(3, nd.base, deformation=gd)
    np.testing.assert_allclose(commutator_PP_direct(0, 2, psi, ndg)(pts), commutator_PP_direct(0, 2, psi, nd)(pts),
                               rtol=1e-12, atol=1e-14)


def test_general_coefficient_needs_factor_two():
    # g != 0: only -f'/r + 2 g' reproduces the composition
    gd = GeneralDeformation(f=lambda s: 0.3 * s, g=lambda q: 0.2 * q + 0.05 * q * q,
                            f_prime=lambda s: 0.3 + 0 * s, g_prime=lambda q: 0.2 + 0.1 * q, name="poly")
    (nd, psi, pts), = cases(7, dims=(2,), tau=0.3, deformation=gd, count=40)
    direct = commutator_PP_direct(0, 1, psi, nd)(pts)
    good = commutator_PP_closed(0, 1, psi, nd)(pts)
    literal = commutator_PP_closed(0, 1, psi, nd, literal=True)(pts)
    floor = 1e-12 * np.max(np.abs(direct))
    assert np.max(np.abs(good - direct) / (np.abs(direct) + floor)) < 1e-8
    assert np.max(np.abs(literal - direct) / (np.abs(direct) + floor)) > 1e-2


def test_bensalem_closed_form_inside_domain():
    gd = GeneralDeformation.bensalem_bouaziz(0.05)
    (nd, psi, pts), = cases(8, dims=(2,), tau=1.0, deformation=gd, count=40)
    direct = commutator_PP_direct(0, 1, psi, nd)(pts)
    closed = commutator_PP_closed(0, 1, psi, nd)(pts)
    np.testing.assert_allclose(closed, direct, rtol=1e-8, atol=1e-12 * np.max(np.abs(direct)))


def test_standard_coefficient():
    nd = NDimParams(2, DeformationParams(tau=2.0))
    assert pp_coefficient(0.25, nd) == pytest.approx(2.0 * (4.0 - 4.0))
    assert pp_coefficient(1.0, nd) == pytest.approx(2.0 * 3.0)


def test_l1_norm_has_no_closed_form():
    (nd, psi, pts), = cases(9, dims=(2,), norm_kind="l1", count=5)
    with pytest.raises(ClosedFormUnavailableError):
        commutator_PP_closed(0, 1, psi, nd)
    # the composition itself is still fine off the axes
    assert np.all(np.isfinite(commutator_PP_direct(0, 1, psi, nd)(pts)))


def test_axis_singularity_raises():
    nd = NDimParams(2, DeformationParams(tau=1.0))
    (_, psi, _), = cases(10, dims=(2,), tau=1.0, count=1)
    # P alone only needs D(|x|), which is continuous; the commutator needs D'
    assert np.isfinite(apply_P_j(0, psi, nd)(np.zeros((2, 1)))[0])
    with pytest.raises(AxisSingularityError):
        commutator_PP_direct(0, 1, psi, nd)(np.zeros((2, 1)))


def test_config_validation():
    with pytest.raises(ConfigError):
        NDimParams(0)
    with pytest.raises(ConfigError):
        NDimParams(2, norm_kind="max")
    with pytest.raises(IndexError):
        apply_P_j(3, None, NDimParams(2))
