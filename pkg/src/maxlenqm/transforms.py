"""Quasi-momentum representation: projection onto eigenstates and its inverse.

Forward:  psi(eta) = A hbar int dtheta psi(x(theta)) exp(-i eta theta)
Inverse:  psi(x)   = 1/(hbar sqrt(2 pi tau sqrt3)) int deta psi(eta) exp(i eta theta(x))

In (theta, eta) this is an ordinary Fourier pair on the bounded chart.  The
inverse integral is truncated at +-eta_max and summed with the trapezoid rule,
which periodizes in theta with period 2 pi / eta_step; the default step keeps
that period well above the chart length.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import SQRT3, ThetaChart, theta_of_x
from .errors import ConfigError
from .jets import Jet
from .operators import apply_X
from .quadrature import build_grid, divergence_check, inner_product
from .states import WaveFunction, as_wave, eigenstate_amplitude


@dataclass(frozen=True)
class EtaGrid:
    eta_max: float
    eta_step: float

    def __post_init__(self):
        if not (self.eta_max > 0 and self.eta_step > 0):
            raise ConfigError("eta_max and eta_step must be positive")

    @classmethod
    def default(cls, params, eta_max_mult=80.0, eta_step_div=4.0):
        """eta_max = mult * tau hbar; eta_step = (tau hbar sqrt3 / 2) / div."""
        th = params.tau * params.hbar
        return cls(eta_max_mult * th, th * SQRT3 / 2.0 / eta_step_div)

    def etas(self):
        n = int(np.floor(self.eta_max / self.eta_step * (1 + 1e-12)))
        return self.eta_step * np.arange(-n, n + 1)


@dataclass(frozen=True, eq=False)
class QuasiMomentumSamples:
    etas: np.ndarray
    values: np.ndarray
    eta_step: float
    eta_max: float

    def with_values(self, values):
        return QuasiMomentumSamples(self.etas, np.asarray(values), self.eta_step, self.eta_max)

    def trapezoid_weights(self):
        w = np.full(self.etas.size, self.eta_step)
        if self.etas.size > 1:
            w[[0, -1]] *= 0.5
        return w


def inverse_constant(params):
    return 1.0 / (params.hbar * np.sqrt(2.0 * np.pi * params.tau * SQRT3))


def _default_grid(params, grid):
    return grid if grid is not None else build_grid(ThetaChart(params))


def to_quasi_momentum(psi, eta_grid, params, grid=None):
    grid = _default_grid(params, grid)
    psi = as_wave(psi)
    etas = eta_grid.etas()
    vals = np.asarray(psi(grid.x), dtype=complex)
    kernel = np.exp(-1j * np.outer(etas, grid.nodes))
    out = eigenstate_amplitude(params) * grid.hbar * (kernel @ (grid.weights * vals))
    return QuasiMomentumSamples(etas, out, eta_grid.eta_step, eta_grid.eta_max)


def _theta_series(samples, theta, params, order):
    """[g, g', ..., g^(order)] of g(theta) = C sum_k c_k psi_k exp(i eta_k theta)."""
    coef = inverse_constant(params) * samples.trapezoid_weights() * samples.values
    phase = np.exp(1j * np.outer(np.ravel(theta), samples.etas))
    out = []
    for m in range(order + 1):
        out.append((phase @ (coef * (1j * samples.etas) ** m)).reshape(np.shape(theta)))
    return out


def from_quasi_momentum(samples, x, params):
    chart = ThetaChart(params)
    return _theta_series(samples, theta_of_x(np.asarray(x, dtype=float), chart), params, 0)[0]


def reconstruct(samples, params):
    """The inverse transform as a WaveFunction, with exact jets."""
    chart = ThetaChart(params)

    def taylor(x, order):
        theta = theta_of_x(Jet.variable(x, order), chart)
        return theta.compose(_theta_series(samples, theta.value, params, order))

    return WaveFunction(taylor, "reconstructed")


def roundtrip_error(psi, eta_grid, params, grid=None):
    """Deformed-measure L2 distance between psi and inverse(forward(psi))."""
    grid = _default_grid(params, grid)
    psi = as_wave(psi)
    samples = to_quasi_momentum(psi, eta_grid, params, grid)
    diff = psi(grid.x) - from_quasi_momentum(samples, grid.x, params)
    return float(np.sqrt(grid.hbar * np.sum(grid.weights * np.abs(diff) ** 2)))


def parseval_factor(psi, eta_grid, params, grid=None):
    """sum deta |psi(eta)|^2 / <psi|psi>; tends to sqrt3 tau hbar."""
    grid = _default_grid(params, grid)
    samples = to_quasi_momentum(psi, eta_grid, params, grid)
    mass = np.sum(samples.trapezoid_weights() * np.abs(samples.values) ** 2)
    return float(mass / inner_product(as_wave(psi), as_wave(psi), grid).real)


def parseval_limit(params):
    return SQRT3 * params.tau * params.hbar


def apply_P_quasi(samples):
    """P acts as multiplication by eta."""
    return samples.with_values(samples.etas * samples.values)


def apply_X_quasi(samples, params, grid=None, check=True):
    """X in the quasi representation, as the multiplier x(theta) under the transform pair.

    Equivalent to (2/tau) tan(i k d/deta) / (sqrt3 + tan(i k d/deta)) with
    k = tau hbar sqrt3 / 2; realized as inverse -> multiply by x -> forward.
    ``check`` guards against X psi leaving the Hilbert space by testing
    <X^2> over the whole chart; turn it off when ``grid`` is a window, since
    the truncated eta sum is periodic in theta and never decays on the chart.
    """
    grid = _default_grid(params, grid)
    rec = reconstruct(samples, params)
    if check:
        divergence_check(lambda x: x**2 * np.abs(rec(x)) ** 2, grid, name="<X^2> of reconstruction")
    eta_grid = EtaGrid(samples.eta_max, samples.eta_step)
    return to_quasi_momentum(apply_X(rec), eta_grid, params, grid)


def centered_difference(samples):
    """d/deta of the samples by second-order centered differences (one-sided at the ends)."""
    return samples.with_values(np.gradient(samples.values, samples.eta_step, edge_order=2))


def scalar_product_quasi(psi_s, phi_s, params, grid=None, normalization="literal"):
    """Discretized triple integral over (x, eta', eta) for <Psi|Phi>.

    ``normalization="literal"`` uses the printed prefactor 1/(2 pi hbar^2 sqrt3);
    ``"consistent"`` uses the square of the inverse-transform constant,
    1/(2 pi hbar^2 tau sqrt3), which reproduces the position-space inner
    product.  The two differ by a factor tau.
    """
    if psi_s.etas.shape != phi_s.etas.shape or not np.allclose(psi_s.etas, phi_s.etas):
        raise ConfigError("quasi-momentum samples live on different eta grids")
    grid = _default_grid(params, grid)
    if normalization == "literal":
        const = 1.0 / (2.0 * np.pi * params.hbar**2 * SQRT3)
    elif normalization == "consistent":
        const = inverse_constant(params) ** 2
    else:
        raise ConfigError(f"unknown normalization {normalization!r}")
    etas = phi_s.etas
    e = np.exp(1j * np.outer(etas, grid.nodes))
    # kernel[k', k] = int dx/D exp(i (eta_k - eta_k') theta(x))
    kernel = grid.hbar * (np.conj(e) * grid.weights) @ e.T
    left = np.conj(psi_s.values) * psi_s.trapezoid_weights()
    right = phi_s.values * phi_s.trapezoid_weights()
    return complex(const * (left @ kernel @ right))
