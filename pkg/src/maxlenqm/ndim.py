"""n-dimensional position-deformed algebra.

[X_i, P_j] = i hbar delta_ij D_n(|x|), with X_i = x_i and
P_j = -i hbar D_n(|x|) d/dx_j, where D_n(s) = 1 - tau s + tau^2 s^2 or the
general 1 - f(s) + g(s^2).  The momentum components do not commute;
:func:`commutator_PP_direct` computes [P_i, P_j] by composing the operators
and is the reference for every closed-form expression in this module.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import jets
from .algebra import DeformationParams, GeneralDeformation, general_deformation_factor
from .errors import AxisSingularityError, ClosedFormUnavailableError, ConfigError
from .families import hermite_poly
from .jets import Jet

# distance (in units of 1/tau) below which norm derivatives are undefined
AXIS_EPS = 1e-6

NORM_KINDS = ("euclidean", "l1")


@dataclass(frozen=True)
class NDimParams:
    dim: int
    base: DeformationParams = field(default_factory=DeformationParams)
    norm_kind: str = "euclidean"
    deformation: Optional[GeneralDeformation] = None

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ConfigError(f"dim must be a positive integer, got {self.dim!r}")
        if self.norm_kind not in NORM_KINDS:
            raise ConfigError(f"norm_kind must be one of {NORM_KINDS}")

    @property
    def eps_axis(self):
        return AXIS_EPS / self.base.tau


@dataclass(frozen=True, eq=False)
class NDimWaveFunction:
    """``taylor(points, order)`` -> Jet in ``dim`` variables; points has shape (dim, m)."""

    taylor: Callable[[np.ndarray, int], Jet]
    dim: int
    label: str = ""

    def __call__(self, points):
        return self.taylor(np.asarray(points, dtype=float), 0).value

    def jet(self, points, order=2):
        return self.taylor(np.asarray(points, dtype=float), order)

    def scaled(self, c):
        return NDimWaveFunction(lambda p, k: self.taylor(p, k) * c, self.dim, self.label)

    def __add__(self, other):
        return NDimWaveFunction(lambda p, k: self.taylor(p, k) + other.taylor(p, k), self.dim)

    def __sub__(self, other):
        return self + other.scaled(-1.0)


def norm(X, nd):
    """|x| as a jet (euclidean or l1).  Raises on points where its derivatives blow up."""
    values = np.array([xi.value for xi in X])
    if X[0].order >= 1:
        if nd.norm_kind == "euclidean":
            bad = np.sqrt(np.sum(values**2, axis=0)) < nd.eps_axis
        else:
            bad = np.any(np.abs(values) < nd.eps_axis, axis=0)
        if np.any(bad):
            raise AxisSingularityError(
                f"{nd.norm_kind} norm is not differentiable at {int(np.sum(bad))} evaluation point(s)")
    if nd.norm_kind == "euclidean":
        total = X[0] * X[0]
        for xi in X[1:]:
            total = total + xi * xi
        return jets.sqrt(total)
    total = jets.absolute(X[0])
    for xi in X[1:]:
        total = total + jets.absolute(xi)
    return total


def deformation_factor_nd(X, nd):
    r = norm(X, nd)
    if nd.deformation is None:
        tau = nd.base.tau
        return 1.0 - tau * r + tau**2 * (r * r)
    return general_deformation_factor(r, nd.deformation)


def _check_index(i, nd):
    if not 0 <= i < nd.dim:
        raise IndexError(f"index {i} out of range for dim={nd.dim}")


def apply_X_i(i, psi, nd=None):
    if not 0 <= i < psi.dim:
        raise IndexError(f"index {i} out of range for dim={psi.dim}")
    return NDimWaveFunction(lambda p, k: Jet.variables(p, k)[i] * psi.taylor(p, k), psi.dim,
                            f"X{i} {psi.label}")


def apply_P_j(j, psi, nd):
    _check_index(j, nd)
    coef = -1j * nd.base.hbar

    def taylor(p, k):
        d = deformation_factor_nd(Jet.variables(p, k), nd)
        return coef * d * psi.taylor(p, k + 1).partial(j)

    return NDimWaveFunction(taylor, psi.dim, f"P{j} {psi.label}")


def multiply_deformation_nd(psi, nd):
    return NDimWaveFunction(lambda p, k: deformation_factor_nd(Jet.variables(p, k), nd) * psi.taylor(p, k),
                            psi.dim)


def commutator_XX(i, j, psi):
    return apply_X_i(i, apply_X_i(j, psi)) - apply_X_i(j, apply_X_i(i, psi))


def commutator_XP(i, j, psi, nd):
    return apply_X_i(i, apply_P_j(j, psi, nd)) - apply_P_j(j, apply_X_i(i, psi), nd)


def algebra_residual(i, j, psi, nd):
    """([X_i, P_j] - i hbar delta_ij D_n) psi."""
    res = commutator_XP(i, j, psi, nd)
    if i == j:
        res = res - multiply_deformation_nd(psi, nd).scaled(1j * nd.base.hbar)
    return res


def commutator_PP_direct(i, j, psi, nd):
    return apply_P_j(i, apply_P_j(j, psi, nd), nd) - apply_P_j(j, apply_P_j(i, psi, nd), nd)


def pp_coefficient(r, nd, literal=False):
    """Scalar c(r) in [P_i, P_j] = i hbar c(r) (P_i X_j - P_j X_i), euclidean norm.

    Standard deformation: tau (2 tau - 1/r).  General f/g: -f'(r)/r + 2 g'(r^2),
    which reduces to the standard value for f = tau s, g = tau^2 q.  With
    ``literal=True`` the general case uses the commonly quoted -f'(r)/r + g'(r^2),
    which disagrees with the operator composition whenever g' != 0.
    """
    if nd.deformation is None:
        tau = nd.base.tau
        return tau * (2.0 * tau - 1.0 / r)
    gd = nd.deformation
    return -gd.f_prime(r) / r + (1.0 if literal else 2.0) * gd.g_prime(r * r)


def commutator_PP_closed(i, j, psi, nd, literal=False):
    """i hbar c(|x|) (P_i X_j - P_j X_i) psi.

    Only meaningful for the euclidean norm, where d|x|/dx_i = x_i / |x|; for
    the l1 norm no expression of this shape equals the commutator.
    """
    if nd.norm_kind != "euclidean":
        raise ClosedFormUnavailableError("the closed form needs a radial (euclidean) norm")
    _check_index(i, nd)
    _check_index(j, nd)
    anti = apply_P_j(i, apply_X_i(j, psi), nd) - apply_P_j(j, apply_X_i(i, psi), nd)
    coef = 1j * nd.base.hbar

    def taylor(p, k):
        r = norm(Jet.variables(p, k), nd)
        return coef * pp_coefficient(r, nd, literal) * anti.taylor(p, k)

    return NDimWaveFunction(taylor, psi.dim, f"[P{i},P{j}] closed")


def commutator_PP_expanded(i, j, psi, nd):
    """-hbar^2 D_n D_n'(r) (dr/dx_i d_j - dr/dx_j d_i) psi, from expanding the double application."""
    hbar = nd.base.hbar

    def taylor(p, k):
        X = Jet.variables(p, k + 1)
        r = norm(X, nd)
        if nd.deformation is None:
            tau = nd.base.tau
            d_prime = -tau + 2.0 * tau**2 * r.truncate(k)
        else:
            gd = nd.deformation
            rk = r.truncate(k)
            d_prime = -gd.f_prime(rk) + 2.0 * rk * gd.g_prime(rk * rk)
        d = deformation_factor_nd(Jet.variables(p, k), nd)
        f = psi.taylor(p, k + 1)
        bracket = r.partial(i) * f.partial(j) - r.partial(j) * f.partial(i)
        return -hbar**2 * d * d_prime * bracket

    return NDimWaveFunction(taylor, psi.dim, f"[P{i},P{j}] expanded")


def jacobi_residual(i, j, k, psi, nd):
    """[[P_i,P_j],X_k] + [[P_j,X_k],P_i] + [[X_k,P_i],P_j] applied to psi."""
    P = lambda a: (lambda f: apply_P_j(a, f, nd))  # noqa: E731
    X = lambda a: (lambda f: apply_X_i(a, f))  # noqa: E731

    def comm(A, B):
        return lambda f: A(B(f)) - B(A(f))

    t1 = comm(comm(P(i), P(j)), X(k))(psi)
    t2 = comm(comm(P(j), X(k)), P(i))(psi)
    t3 = comm(comm(X(k), P(i)), P(j))(psi)
    return t1 + t2 + t3


def gaussian_nd(dim, rotation=None, center=None, width=None, ks=None, kick=None):
    """Product of Hermite functions in rotated, shifted, scaled coordinates, times a plane wave."""
    rotation = np.eye(dim) if rotation is None else np.asarray(rotation, dtype=float)
    center = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
    width = np.ones(dim) if width is None else np.asarray(width, dtype=float)
    ks = [0] * dim if ks is None else list(ks)
    kick = np.zeros(dim) if kick is None else np.asarray(kick, dtype=float)

    def taylor(p, order):
        X = Jet.variables(p, order)
        out = None
        for a in range(dim):
            u = sum(rotation[a, b] * (X[b] - center[b]) for b in range(dim)) / width[a]
            factor = hermite_poly(ks[a], u) * jets.exp(-0.5 * u * u)
            out = factor if out is None else out * factor
        if np.any(kick):
            out = out * jets.exp(1j * sum(kick[b] * X[b] for b in range(dim)))
        return out

    return NDimWaveFunction(taylor, dim, "gaussian_nd")


def random_state_nd(dim, tau, rng):
    q, _ = np.linalg.qr(np.eye(dim) + 0.3 * rng.normal(size=(dim, dim)))
    return gaussian_nd(
        dim,
        rotation=q,
        center=rng.uniform(-0.3, 0.3, dim) / tau,
        width=rng.uniform(0.5, 1.2, dim) / tau,
        ks=rng.integers(0, 3, dim),
        kick=rng.uniform(-1.0, 1.0, dim) * tau,
    )


def sample_off_axis(dim, tau, rng, count, nd=None, extent=1.5, margin=1e3):
    """Uniform points in [-extent/tau, extent/tau]^dim at least margin*AXIS_EPS/tau from every axis hyperplane."""
    eps = margin * AXIS_EPS / tau
    s_max = nd.deformation.s_max if nd is not None and nd.deformation is not None else np.inf
    out = []
    while len(out) < count:
        p = rng.uniform(-extent, extent, dim) / tau
        r = np.linalg.norm(p) if nd is None or nd.norm_kind == "euclidean" else np.sum(np.abs(p))
        if np.all(np.abs(p) > eps) and r < 0.95 * s_max:
            out.append(p)
    return np.array(out).T
