"""Position and momentum operators on wave functions, via jet arithmetic."""

import numpy as np

from .algebra import deformation_factor
from .jets import Jet
from .quadrature import divergence_check, inner_product
from .states import WaveFunction, as_wave


def apply_X(psi):
    psi = as_wave(psi)
    return WaveFunction(lambda x, k: Jet.variable(x, k) * psi.taylor(x, k), f"X {psi.label}")


def apply_P(psi, params):
    """-i hbar D(x) psi'(x).  Output jets of order k need order k+1 from psi."""
    psi = as_wave(psi)
    coef = -1j * params.hbar

    def taylor(x, k):
        d = deformation_factor(Jet.variable(x, k), params)
        return coef * d * psi.taylor(x, k + 1).partial()

    return WaveFunction(taylor, f"P {psi.label}")


def apply_P_squared(psi, params):
    return apply_P(apply_P(psi, params), params)


def apply_P_dagger_flat(psi, params):
    """P + i hbar tau (1 - 2 tau x): the adjoint of P under the flat measure dx."""
    psi = as_wave(psi)
    p_psi = apply_P(psi, params)
    tau, hbar = params.tau, params.hbar

    def taylor(x, k):
        X = Jet.variable(x, k)
        return p_psi.taylor(x, k) + 1j * hbar * tau * (1.0 - 2.0 * tau * X) * psi.taylor(x, k)

    return WaveFunction(taylor, f"P+ {psi.label}")


def multiply_deformation(psi, params):
    """D(x) psi(x)."""
    psi = as_wave(psi)
    return WaveFunction(lambda x, k: deformation_factor(Jet.variable(x, k), params) * psi.taylor(x, k),
                        f"D {psi.label}")


def commutator(a, b):
    """[A, B] as an operator, for operators given as WaveFunction -> WaveFunction callables."""
    return lambda psi: a(b(psi)) - b(a(psi))


def commutator_residual(psi, params):
    """(XP - PX - i hbar D) psi, which vanishes identically."""
    psi = as_wave(psi)
    xp = commutator(apply_X, lambda f: apply_P(f, params))(psi)
    return xp - multiply_deformation(psi, params).scaled(1j * params.hbar)


def symmetry_defect(psi, phi, measure, grid):
    """<psi|P phi> - <P psi|phi> under the 'deformed' or 'flat' measure.

    Under the flat measure this equals <i hbar tau (1 - 2 tau x) psi | phi>,
    i.e. -i hbar tau <psi|(1 - 2 tau x) phi>; under the deformed measure it
    vanishes for states that vanish at both chart endpoints.
    """
    params = grid.chart.params
    psi, phi = as_wave(psi), as_wave(phi)
    p_psi, p_phi = apply_P(psi, params), apply_P(phi, params)
    if measure == "flat":
        divergence_check(lambda x: np.conj(psi(x)) * p_phi(x), grid, "flat", "<psi|P phi>")
        divergence_check(lambda x: np.conj(p_psi(x)) * phi(x), grid, "flat", "<P psi|phi>")
    return inner_product(psi, p_phi, grid, measure) - inner_product(p_psi, phi, grid, measure)


def flat_defect_expected(psi, phi, grid):
    """<i hbar tau (1 - 2 tau x) psi | phi> under the flat measure."""
    params = grid.chart.params
    tau, hbar = params.tau, params.hbar
    psi, phi = as_wave(psi), as_wave(phi)
    return inner_product(lambda x: 1j * hbar * tau * (1.0 - 2.0 * tau * x) * psi(x), phi, grid, "flat")
