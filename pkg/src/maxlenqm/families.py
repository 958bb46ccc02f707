"""Built-in test-state families and the ``family:key=value,...`` spec parser.

``hermite``  Hermite function in x: H_k(u) exp(-u^2/2) exp(i kick tau x),
             u = (x - center/tau) / (sigma/tau).  Smooth, and flat to all
             orders at both chart endpoints, so every moment is finite.
``theta``    Hermite function in theta: H_k(v) exp(-v^2/2), v = (theta -
             center L) / (sigma L) with L the chart length.  Nonzero at the
             chart endpoints unless sigma is small; moments may diverge.
``plane``    Momentum eigenstate with eta = value * hbar tau.
"""

from . import jets
from .algebra import ThetaChart, theta_of_x
from .errors import UnknownStateError
from .jets import Jet
from .states import WaveFunction, eigenstate


def hermite_poly(k, u):
    """Physicists' Hermite polynomial H_k by recurrence; jet-polymorphic."""
    h_prev, h = 1.0 + 0.0 * u, 2.0 * u
    if k == 0:
        return h_prev
    for n in range(1, k):
        h_prev, h = h, 2.0 * u * h - 2.0 * n * h_prev
    return h


def hermite_state(params, k=0, sigma=0.4, center=0.0, kick=0.0):
    tau = params.tau
    width, x0, wave = sigma / tau, center / tau, kick * tau

    def taylor(x, order):
        X = Jet.variable(x, order)
        u = (X - x0) / width
        out = hermite_poly(k, u) * jets.exp(-0.5 * u * u)
        if wave:
            out = out * jets.exp(1j * wave * X)
        return out

    return WaveFunction(taylor, f"hermite:k={k},sigma={sigma:g},center={center:g},kick={kick:g}")


def theta_state(params, k=0, sigma=0.05, center=0.0):
    chart = ThetaChart(params)
    width, t0 = sigma * chart.length, center * chart.length

    def taylor(x, order):
        v = (theta_of_x(Jet.variable(x, order), chart) - t0) / width
        return hermite_poly(k, v) * jets.exp(-0.5 * v * v)

    return WaveFunction(taylor, f"theta:k={k},sigma={sigma:g},center={center:g}")


def plane_state(params, eta=1.0):
    return eigenstate(eta * params.hbar * params.tau, params).base


FAMILIES = {
    "hermite": (hermite_state, {"k": int, "sigma": float, "center": float, "kick": float}),
    "theta": (theta_state, {"k": int, "sigma": float, "center": float}),
    "plane": (plane_state, {"eta": float}),
}


def parse_state_spec(spec, params):
    """Build an (unnormalized) WaveFunction from e.g. ``hermite:k=0,sigma=0.1``."""
    name, _, rest = spec.strip().partition(":")
    if name not in FAMILIES:
        raise UnknownStateError(f"unknown state family {name!r}; choose from {sorted(FAMILIES)}")
    factory, fields = FAMILIES[name]
    kwargs = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq or key not in fields:
            raise UnknownStateError(f"bad parameter {item!r} for family {name!r}; allowed {sorted(fields)}")
        try:
            kwargs[key] = fields[key](value)
        except ValueError as exc:
            raise UnknownStateError(f"cannot parse {item!r}: {exc}") from None
    if "k" in kwargs and kwargs["k"] < 0:
        raise UnknownStateError("k must be nonnegative")
    if "sigma" in kwargs and not kwargs["sigma"] > 0:
        raise UnknownStateError("sigma must be positive")
    return factory(params, **kwargs)


def random_hermite_mixture(params, rng, terms=None):
    """Random finite-moment state: a complex superposition of hermite states."""
    terms = terms or int(rng.integers(1, 4))
    psi = None
    for _ in range(terms):
        comp = hermite_state(
            params,
            k=int(rng.integers(0, 4)),
            sigma=float(rng.uniform(0.25, 0.8)),
            center=float(rng.uniform(-0.5, 1.0)),
            kick=float(rng.uniform(-2.0, 2.0)),
        ).scaled(complex(rng.normal(), rng.normal()))
        psi = comp if psi is None else psi + comp
    return psi
