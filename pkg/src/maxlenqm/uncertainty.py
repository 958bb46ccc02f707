"""Moments, dispersions and the generalized uncertainty relation."""

from dataclasses import asdict, dataclass
from typing import Tuple, Union

import numpy as np

from .algebra import deformation_factor
from .errors import DivergentMomentError, NotNormalizedError
from .quadrature import DIVERGENCE_ATOL, DIVERGENCE_GUARDS, DIVERGENCE_RTOL, graded_grid
from .states import as_wave

NORMALIZATION_TOL = 1e-8
MARGIN_TOL = 1e-9
# a discriminant this close to zero (relative to b^2) is a double root
DOUBLE_ROOT_RTOL = 1e-12


@dataclass(frozen=True)
class UncertaintyReport:
    mean_x: float
    mean_x2: float
    mean_p: float
    mean_p2: float
    delta_x: float
    delta_p: float
    gup_rhs: float
    satisfied: bool
    margin: float
    imag_mean_p: float = 0.0
    norm: float = 1.0

    def to_dict(self):
        return {k: (bool(v) if isinstance(v, (bool, np.bool_)) else float(v)) for k, v in asdict(self).items()}


@dataclass(frozen=True)
class NoRealSolution:
    discriminant: float


def _moment_sums(psi, params, grid):
    jet = psi.jet(grid.x, 1)
    f, df = jet.value, jet.derivative((1,))
    p_f = -1j * params.hbar * deformation_factor(grid.x, params) * df
    dens = np.abs(f) ** 2
    integrands = {
        "norm": dens,
        "mean_x": grid.x * dens,
        "mean_x2": grid.x**2 * dens,
        "mean_p": np.conj(f) * p_f,
        "mean_p2": np.abs(p_f) ** 2,
    }
    out = {}
    for name, vals in integrands.items():
        if not np.all(np.isfinite(vals)):
            raise DivergentMomentError(f"{name} integrand is not finite", moment=name)
        out[name] = grid.hbar * np.sum(grid.weights * vals)
    return out


def moments(psi, params, grid):
    psi = as_wave(psi)
    guarded = [_moment_sums(psi, params, graded_grid(grid.chart, g, grid.panels, grid.order))
               for g in DIVERGENCE_GUARDS]
    for name in guarded[0]:
        a, b = guarded[0][name], guarded[1][name]
        if abs(a - b) > DIVERGENCE_RTOL * max(abs(a), abs(b)) + DIVERGENCE_ATOL:
            raise DivergentMomentError(f"{name} diverges: guard bands give {abs(a):.6g} and {abs(b):.6g}",
                                       moment=name, values=[a, b])
    s = _moment_sums(psi, params, grid)
    norm = float(s["norm"].real)
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"state has <psi|psi> = {norm!r}; normalize it first")
    mean_x, mean_x2 = float(s["mean_x"].real), float(s["mean_x2"].real)
    mean_p, mean_p2 = float(s["mean_p"].real), float(s["mean_p2"].real)
    delta_x = np.sqrt(max(mean_x2 - mean_x**2, 0.0))
    delta_p = np.sqrt(max(mean_p2 - mean_p**2, 0.0))
    rhs = gup_rhs(mean_x, mean_x2, params)
    margin = delta_x * delta_p - rhs
    return UncertaintyReport(
        mean_x=mean_x, mean_x2=mean_x2, mean_p=mean_p, mean_p2=mean_p2,
        delta_x=float(delta_x), delta_p=float(delta_p), gup_rhs=rhs,
        satisfied=bool(margin >= -MARGIN_TOL), margin=float(margin),
        imag_mean_p=float(s["mean_p"].imag), norm=norm,
    )


def gup_rhs(mean_x, mean_x2, params):
    """(hbar/2)(1 - tau <X> + tau^2 <X^2>)."""
    tau = params.tau
    return 0.5 * params.hbar * (1.0 - tau * mean_x + tau**2 * mean_x2)


def delta_x_branches(delta_p, mean_x, params) -> Union[Tuple[float, float], NoRealSolution]:
    """Roots in Delta X of Delta X Delta P = gup_rhs(<X>, Delta X^2 + <X>^2).

    Returns (smaller, larger), or NoRealSolution when Delta P lies below the
    minimal momentum uncertainty for this <X>.
    """
    tau, hbar = params.tau, params.hbar
    b = delta_p / (hbar * tau**2)
    c = (1.0 - tau * mean_x + tau**2 * mean_x**2) / tau**2
    disc = b * b - c
    if abs(disc) <= DOUBLE_ROOT_RTOL * b * b:
        disc = 0.0
    elif disc < 0:
        return NoRealSolution(float(disc))
    root = np.sqrt(disc)
    return float(b - root), float(b + root)


def extremal_uncertainties(params):
    """(Delta X_max, Delta P_min) = (1/tau, hbar tau)."""
    return 1.0 / params.tau, params.hbar * params.tau


def required_delta_p(delta_x, params, mean_x=0.0):
    """Smallest Delta P allowed by the GUP for the given Delta X and <X>."""
    return gup_rhs(mean_x, np.asarray(delta_x) ** 2 + mean_x**2, params) / np.asarray(delta_x)
