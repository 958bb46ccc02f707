"""Deformation factor, general f/g deformations and the theta chart.

The momentum operator of the algebra is ``P = -i hbar D(x) d/dx`` with
``D(x) = 1 - tau x + tau^2 x^2``.  The change of variables

    theta(x) = (2 / (tau hbar sqrt3)) * (arctan((2 tau x - 1) / sqrt3) + pi/6)

satisfies ``hbar D(x) theta'(x) = 1``, so ``dx / D = hbar dtheta`` and
``P = -i d/dtheta``.  It maps the real line onto the finite open interval
``(theta_min, theta_max)``; every integral in the package is done there.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import jets
from .errors import ChartBoundaryError, ConfigError, DomainError

SQRT3 = np.sqrt(3.0)

# fraction of the chart length kept clear of each endpoint
CHART_GUARD = 1e-9


@dataclass(frozen=True)
class DeformationParams:
    tau: float = 0.1
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("tau", "hbar", "mass"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {value!r}")
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "hbar", float(self.hbar))
        object.__setattr__(self, "mass", float(self.mass))


@dataclass(frozen=True)
class GeneralDeformation:
    """``D(s) = 1 - f(s) + g(s^2)`` for a nonnegative norm ``s``.

    ``f`` and ``g`` must accept floats, arrays and :class:`~maxlenqm.jets.Jet`
    objects (plain arithmetic does), because the n-dimensional operators
    differentiate through them.  ``s_max`` bounds the domain of validity.
    """

    f: Callable
    g: Callable
    f_prime: Callable
    g_prime: Callable
    s_max: float = np.inf
    name: str = "general"

    @classmethod
    def standard(cls, tau):
        return cls(
            f=lambda s: tau * s,
            g=lambda q: tau**2 * q,
            f_prime=lambda s: tau + 0 * s,
            g_prime=lambda q: tau**2 + 0 * q,
            name=f"standard(tau={tau})",
        )

    @classmethod
    def bensalem_bouaziz(cls, alpha):
        """f(X) = 1 - 1/(1 - alpha X^2), g = 0; valid for X < 1/sqrt(alpha)."""
        if alpha <= 0:
            raise ConfigError("alpha must be positive")
        return cls(
            f=lambda s: 1.0 - 1.0 / (1.0 - alpha * s * s),
            g=lambda q: 0.0 * q,
            f_prime=lambda s: -2.0 * alpha * s / (1.0 - alpha * s * s) ** 2,
            g_prime=lambda q: 0.0 * q,
            s_max=1.0 / np.sqrt(alpha),
            name=f"bensalem_bouaziz(alpha={alpha})",
        )


def deformation_factor(x, params):
    """D(x) = 1 - tau x + tau^2 x^2.  Works on floats, arrays and jets."""
    tau = params.tau
    return 1.0 - tau * x + tau**2 * (x * x)


def general_deformation_factor(x_norm, gd):
    s = jets.value_of(x_norm)
    if np.any(np.asarray(s) < 0) or np.any(np.asarray(s) >= gd.s_max):
        raise DomainError(f"norm outside the domain of validity [0, {gd.s_max}) of {gd.name}")
    out = 1.0 - gd.f(x_norm) + gd.g(x_norm * x_norm)
    if np.any(np.asarray(jets.value_of(out)).real <= 0):
        raise DomainError(f"deformation factor of {gd.name} is not strictly positive")
    return out


@dataclass(frozen=True)
class ThetaChart:
    params: DeformationParams

    @property
    def scale(self):
        """2 / (tau hbar sqrt3): theta per radian of the arctan phase."""
        return 2.0 / (self.params.tau * self.params.hbar * SQRT3)

    @property
    def theta_min(self):
        return -np.pi / 3.0 * self.scale

    @property
    def theta_max(self):
        return 2.0 * np.pi / 3.0 * self.scale

    @property
    def length(self):
        return np.pi * self.scale

    @property
    def guard(self):
        return CHART_GUARD * self.length


def theta_of_x(x, chart):
    p = chart.params
    if isinstance(x, jets.Jet):
        return chart.scale * (jets.arctan((2.0 * p.tau * x - 1.0) / SQRT3) + np.pi / 6.0)
    x = np.asarray(x, dtype=float)
    # arctan(u) + pi/6 == atan2(sqrt3 tau x, 2 - tau x) on the chart; exact zero at x = 0
    return chart.scale * np.arctan2(SQRT3 * p.tau * x, 2.0 - p.tau * x)


def theta_prime(x, chart):
    """d theta / dx = 1 / (hbar D(x)) in closed form."""
    return 1.0 / (chart.params.hbar * deformation_factor(x, chart.params))


def x_of_theta(theta, chart):
    """Inverse chart map, x = sin(k theta) / (tau sin(k theta + pi/3)), k = tau hbar sqrt3 / 2."""
    theta = np.asarray(theta, dtype=float)
    lo, hi = chart.theta_min, chart.theta_max
    if np.any(~(theta > lo)) or np.any(~(theta < hi)):
        raise ChartBoundaryError(f"theta must lie strictly inside ({lo}, {hi})")
    k = 1.0 / chart.scale
    # sin(k theta + pi/3) = sin(k (theta - theta_min)) = sin(k (theta_max - theta));
    # use the shorter distance so the vanishing denominator keeps its relative accuracy
    dist = np.minimum(theta - lo, hi - theta)
    return np.sin(k * theta) / (chart.params.tau * np.sin(k * dist))


def chart_for(params: Optional[DeformationParams] = None):
    return ThetaChart(params or DeformationParams())
