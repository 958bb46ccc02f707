"""Integration against dx/D(x) over the real line, done as Gauss-Legendre in theta.

Because ``dx / D(x) = hbar dtheta``, the deformed measure becomes ``hbar``
times Lebesgue measure on the bounded chart interval.  The flat measure is
reached the same way with an extra factor ``D(x)`` in the integrand.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from .algebra import ThetaChart, deformation_factor, x_of_theta
from .errors import ConfigError, DivergentMomentError, NonFiniteError, ZeroNormError

DEFAULT_PANELS = 256
DEFAULT_ORDER = 16

# guard bands (fractions of chart length) used to detect divergent integrals
DIVERGENCE_GUARDS = (1e-6, 1e-9)
DIVERGENCE_RTOL = 1e-3
DIVERGENCE_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    chart: ThetaChart
    nodes: np.ndarray
    weights: np.ndarray
    order: int
    panels: int
    x: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.x is None:
            object.__setattr__(self, "x", x_of_theta(self.nodes, self.chart))

    @property
    def hbar(self):
        return self.chart.params.hbar

    def __len__(self):
        return self.nodes.size


def _composite_gauss(breaks, order):
    t, w = np.polynomial.legendre.leggauss(order)
    a, b = breaks[:-1, None], breaks[1:, None]
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * t[None, :]
    weights = 0.5 * (b - a) * w[None, :]
    return nodes.ravel(), weights.ravel()


def build_grid(chart, panels=DEFAULT_PANELS, order=DEFAULT_ORDER, window: Optional[Tuple[float, float]] = None):
    """Composite Gauss-Legendre rule on equal panels covering the chart.

    ``window`` restricts the rule to a sub-interval of the chart; use it for
    states whose support is tiny compared with the chart (small tau).
    """
    if int(panels) != panels or panels < 1:
        raise ConfigError(f"panels must be a positive integer, got {panels!r}")
    if int(order) != order or order < 2:
        raise ConfigError(f"order must be an integer >= 2, got {order!r}")
    lo, hi = chart.theta_min, chart.theta_max
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
        if not lo < hi:
            raise ConfigError("quadrature window does not intersect the chart")
    breaks = np.linspace(lo, hi, int(panels) + 1)
    nodes, weights = _composite_gauss(breaks, int(order))
    guard = chart.guard
    if nodes[0] - chart.theta_min < guard or chart.theta_max - nodes[-1] < guard:
        raise ConfigError("grid too fine: nodes fall inside the chart guard band")
    return QuadratureGrid(chart, nodes, weights, int(order), int(panels))


@lru_cache(maxsize=64)
def graded_grid(chart, guard_fraction, panels=DEFAULT_PANELS, order=DEFAULT_ORDER, ratio=0.25):
    """Rule on [theta_min + g, theta_max - g] with geometric panels towards both ends.

    Integrable endpoint singularities are resolved down to the guard band, so
    comparing two guard bands exposes integrals that do not converge.
    """
    lo, hi = chart.theta_min, chart.theta_max
    h = (hi - lo) / panels
    g = guard_fraction * (hi - lo)
    levels = int(np.ceil(np.log(g / h) / np.log(ratio)))
    steps = h * ratio ** np.arange(1, levels)
    steps = steps[steps > g]
    left = np.concatenate([[lo + g], lo + steps[::-1]])
    right = np.concatenate([hi - steps, [hi - g]])
    core = np.linspace(lo + h, hi - h, panels - 1)
    breaks = np.concatenate([left, core, right])
    nodes, weights = _composite_gauss(breaks, order)
    return QuadratureGrid(chart, nodes, weights, order, breaks.size - 1)


def _checked_sum(values, weights, hbar):
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("integrand is not finite at some quadrature node")
    return hbar * np.sum(weights * values)


def integrate_deformed(fn, grid):
    """hbar * sum_k w_k fn(x_k), i.e. the integral of fn against dx / D(x)."""
    return _checked_sum(np.asarray(fn(grid.x)), grid.weights, grid.hbar)


def integrate_flat(fn, grid):
    """Integral of fn against plain dx, via dx = hbar D(x) dtheta."""
    d = deformation_factor(grid.x, grid.chart.params)
    vals = np.asarray(fn(grid.x)) * d
    return _checked_sum(vals, grid.weights, grid.hbar)


def integrate(fn, grid, measure="deformed"):
    if measure == "deformed":
        return integrate_deformed(fn, grid)
    if measure == "flat":
        return integrate_flat(fn, grid)
    raise ConfigError(f"unknown measure {measure!r}")


def divergence_check(fn, grid, measure="deformed", name="integral"):
    """Raise DivergentMomentError unless fn integrates to the same value at both guard bands."""
    vals = [integrate(fn, graded_grid(grid.chart, g, grid.panels, grid.order), measure)
            for g in DIVERGENCE_GUARDS]
    a, b = vals
    if abs(a - b) > DIVERGENCE_RTOL * max(abs(a), abs(b)) + DIVERGENCE_ATOL:
        raise DivergentMomentError(
            f"{name} does not converge: guard bands give {abs(a):.6g} and {abs(b):.6g}", moment=name, values=vals
        )
    return b


def integrate_checked(fn, grid, measure="deformed", name="integral"):
    divergence_check(fn, grid, measure, name)
    return integrate(fn, grid, measure)


def inner_product(psi, phi, grid, measure="deformed"):
    """<psi|phi>, conjugate-linear in psi."""
    return integrate(lambda x: np.conj(psi(x)) * phi(x), grid, measure)


def norm_squared(psi, grid):
    return float(inner_product(psi, psi, grid).real)


def normalize(psi, grid):
    n2 = norm_squared(psi, grid)
    if not n2 > 0:
        raise ZeroNormError("cannot normalize a state of zero norm")
    return psi.scaled(1.0 / np.sqrt(n2))
