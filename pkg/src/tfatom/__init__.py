"""Thomas-Fermi atom and its leading quantum energy correction.

Atomic units (hbar = m = e = 1) throughout; energies in m e**4 / hbar**2.
"""

from .correction import (
    CorrectionResult,
    delta_e_closed,
    delta_e_oracle,
    delta_term_contribution,
    eq9_density,
    eq10_density,
    phase_space_density,
    schwinger_coefficient,
    surface_flux,
)
from .potentials import AtomicModel, PotentialKind, coulombic_field, origin_cancellation_check, thomas_fermi_field
from .quadrature import TfMoments, integrate_improper, tf_moments
from .tf_solver import TfParams, TfSolution, eval_f, origin_series, shoot, solve_tf

__version__ = "0.1.0"

__all__ = [
    "AtomicModel",
    "CorrectionResult",
    "PotentialKind",
    "TfMoments",
    "TfParams",
    "TfSolution",
    "coulombic_field",
    "delta_e_closed",
    "delta_e_oracle",
    "delta_term_contribution",
    "eq10_density",
    "eq9_density",
    "eval_f",
    "integrate_improper",
    "origin_cancellation_check",
    "origin_series",
    "phase_space_density",
    "schwinger_coefficient",
    "shoot",
    "solve_tf",
    "surface_flux",
    "thomas_fermi_field",
    "tf_moments",
]
