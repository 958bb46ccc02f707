"""Quantum mechanics with a maximal length scale.

Position-deformed Heisenberg algebra [X, P] = i hbar (1 - tau X + tau^2 X^2),
its momentum eigenstates, the uncertainty relation it implies, the
quasi-momentum representation and an n-dimensional extension, all evaluated
with exact Taylor-jet derivatives and chart-based Gauss-Legendre quadrature.
"""

from .algebra import (DeformationParams, GeneralDeformation, ThetaChart, chart_for, deformation_factor,
                      theta_of_x, x_of_theta)
from .errors import (AxisSingularityError, ChartBoundaryError, ClosedFormUnavailableError, ConfigError,
                     DivergentMomentError, DomainError, MaxLenQMError, NonFiniteError, NotNormalizedError,
                     UnknownStateError, ZeroNormError)
from .families import hermite_state, parse_state_spec, plane_state, theta_state
from .jets import Jet
from .operators import apply_P, apply_P_dagger_flat, apply_P_squared, apply_X, commutator_residual, symmetry_defect
from .quadrature import build_grid, inner_product, integrate, norm_squared, normalize
from .states import (EigenState, WaveFunction, eigenstate, kinetic_energy, lattice_eta, orthogonal_eta,
                     overlap_closed_form, overlap_exact)
from .transforms import (EtaGrid, apply_P_quasi, apply_X_quasi, from_quasi_momentum, reconstruct,
                         to_quasi_momentum)
from .uncertainty import UncertaintyReport, delta_x_branches, extremal_uncertainties, moments

__version__ = "0.1.0"

__all__ = [
    "apply_P",
    "apply_P_dagger_flat",
    "apply_P_quasi",
    "apply_P_squared",
    "apply_X",
    "apply_X_quasi",
    "AxisSingularityError",
    "build_grid",
    "chart_for",
    "ChartBoundaryError",
    "ClosedFormUnavailableError",
    "commutator_residual",
    "ConfigError",
    "deformation_factor",
    "DeformationParams",
    "delta_x_branches",
    "DivergentMomentError",
    "DomainError",
    "EigenState",
    "eigenstate",
    "EtaGrid",
    "extremal_uncertainties",
    "from_quasi_momentum",
    "GeneralDeformation",
    "hermite_state",
    "inner_product",
    "integrate",
    "Jet",
    "kinetic_energy",
    "lattice_eta",
    "MaxLenQMError",
    "moments",
    "NonFiniteError",
    "norm_squared",
    "normalize",
    "NotNormalizedError",
    "orthogonal_eta",
    "overlap_closed_form",
    "overlap_exact",
    "parse_state_spec",
    "plane_state",
    "reconstruct",
    "symmetry_defect",
    "theta_of_x",
    "theta_state",
    "ThetaChart",
    "to_quasi_momentum",
    "UncertaintyReport",
    "UnknownStateError",
    "WaveFunction",
    "x_of_theta",
    "ZeroNormError",
]
