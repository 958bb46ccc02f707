"""Wave functions, momentum eigenstates and their overlaps."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .algebra import SQRT3, DeformationParams, ThetaChart, theta_of_x
from .jets import Jet

# below this |argument| the sinc kernels switch to their Taylor series
SINC_SERIES_CUTOFF = 1e-6


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """A complex function of position, evaluable as a jet of any order.

    ``taylor(x, order)`` returns a univariate :class:`Jet` at the points ``x``.
    """

    taylor: Callable[[np.ndarray, int], Jet]
    label: str = ""

    def __call__(self, x):
        return self.taylor(np.asarray(x, dtype=float), 0).value

    def jet(self, x, order=2):
        return self.taylor(np.asarray(x, dtype=float), order)

    def derivatives(self, x, order=2):
        return self.jet(x, order).derivs()

    def scaled(self, c):
        return WaveFunction(lambda x, k: self.taylor(x, k) * c, self.label)

    def __add__(self, other):
        return WaveFunction(lambda x, k: self.taylor(x, k) + other.taylor(x, k),
                            f"({self.label} + {other.label})")

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scaled(-1.0)


def as_wave(psi):
    """Accept an EigenState wherever a WaveFunction is expected."""
    return psi.base if isinstance(psi, EigenState) else psi


def eigenstate_amplitude(params):
    """A = sqrt(tau sqrt3 / (2 pi)), the normalization of every eigenstate."""
    return np.sqrt(params.tau * SQRT3 / (2.0 * np.pi))


@dataclass(frozen=True, eq=False)
class EigenState:
    eta: float
    params: DeformationParams
    base: WaveFunction

    @property
    def amplitude(self):
        return eigenstate_amplitude(self.params)

    @property
    def taylor(self):
        return self.base.taylor

    def __call__(self, x):
        return self.base(x)

    def jet(self, x, order=2):
        return self.base.jet(x, order)

    def scaled(self, c):
        return self.base.scaled(c)


def eigenstate(eta, params):
    """phi_eta(x) = A exp(i eta theta(x)), solving -i hbar D phi' = eta phi."""
    chart = ThetaChart(params)
    amp = eigenstate_amplitude(params)

    def taylor(x, order):
        theta = theta_of_x(Jet.variable(x, order), chart)
        return jets.exp(1j * eta * theta) * amp

    return EigenState(float(eta), params, WaveFunction(taylor, f"phi_eta={eta:g}"))


def _sinc(a):
    a = np.asarray(a, dtype=float)
    small = np.abs(a) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, a)
    return np.where(small, 1.0 - a * a / 6.0, np.sin(safe) / safe)


def overlap_closed_form(eta, eta_prime, params):
    """The literal sinc kernel (tau hbar sqrt3 / (2 pi d)) sin(2 pi d / (tau hbar sqrt3)), d = eta - eta'.

    Kept for reproducing the commonly quoted curve.  The integral it stands
    for is :func:`overlap_exact`; the two differ by a factor 2 in the sine
    argument and by a phase (see the README).
    """
    d = np.asarray(eta, dtype=float) - np.asarray(eta_prime, dtype=float)
    out = _sinc(2.0 * np.pi * d / (params.tau * params.hbar * SQRT3))
    return out[()] if out.ndim == 0 else out


def overlap_exact(eta, eta_prime, params):
    """<phi_eta'|phi_eta> evaluated in closed form.

    The integrand is A^2 hbar exp(i d theta) on the chart, giving
    sinc(d L / 2) exp(i d theta_mid) with L the chart length and theta_mid its
    midpoint: sinc(pi d / (tau hbar sqrt3)) exp(i pi d / (3 tau hbar sqrt3)).
    """
    d = np.asarray(eta, dtype=float) - np.asarray(eta_prime, dtype=float)
    a = np.pi * d / (params.tau * params.hbar * SQRT3)
    out = _sinc(a) * np.exp(1j * a / 3.0)
    return out[()] if out.ndim == 0 else out


def lattice_eta(n, params, convention="Z"):
    """eta_n = (tau hbar sqrt3 / 2) n.

    ``convention`` is "Z" (any integer, default) or "N" (n >= 0 only).
    """
    n = np.asarray(n)
    if convention not in ("Z", "N"):
        raise ValueError(f"unknown lattice convention {convention!r}")
    if convention == "N" and np.any(n < 0):
        raise ValueError("lattice index must be nonnegative under the N convention")
    out = params.tau * params.hbar * SQRT3 / 2.0 * n
    return out[()] if np.ndim(out) == 0 else out


def orthogonal_eta(n, params):
    """eta_n = tau hbar sqrt3 n: the spacing at which eigenstates are exactly orthogonal."""
    out = params.tau * params.hbar * SQRT3 * np.asarray(n)
    return out[()] if np.ndim(out) == 0 else out


def kinetic_energy(eta, params, grid):
    """<phi_eta|P^2|phi_eta> / 2m by quadrature."""
    from .operators import apply_P_squared
    from .quadrature import inner_product

    phi = eigenstate(eta, params)
    value = inner_product(phi, apply_P_squared(phi, params), grid)
    return float(value.real) / (2.0 * params.mass)
