"""Spectral data for the discrete half-line Schrodinger operator with a
diagonal perturbation at one site (and the rank-two variant at sites 0, 1):
perturbed orthogonality measures, resolvent boundary values, scattering
coefficient, bound-state branch and critical coupling, all in closed form and
each cross-checked against brute-force oracles."""

from .basis import Coupling, Coupling2D, phi2d_recurrence, phi_closed_form, phi_recurrence
from .chebyshev import ChebPair, cheb_u_pair, joukowski_a, lambda_from_a, u_pair_values
from .errors import ConvergenceError, DomainError, NumericalError
from .measure import (DensityTable, density_table, mu0_density, mu12_density,
                      muk_density, orthonormality_defect, rho_densities, total_mass)
from .oracle import TruncationResult, empirical_cdf_distance, pv_quadrature, truncated_spectrum
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, adaptive_quadrature
from .resolvent import BoundaryValue, Side, d_abs_sq, d_boundary, i_integral, l_tilde
from .scattering import PhaseTable, ScatterValue, phase_table, s_value
from .spectrum import (BranchSide, EigenResult, ResonanceReport, beta_of_lambda,
                       beta_pm, critical_coupling, eigenvalue, resonance_report)

__version__ = "0.1.0"

__all__ = [
    "ChebPair", "Coupling", "Coupling2D", "DensityTable", "TruncationResult",
    "BoundaryValue", "Side", "ScatterValue", "PhaseTable", "EigenResult",
    "BranchSide", "ResonanceReport", "QuadratureConfig", "DEFAULT_QUADRATURE",
    "DomainError", "ConvergenceError", "NumericalError",
    "cheb_u_pair", "u_pair_values", "joukowski_a", "lambda_from_a",
    "phi_recurrence", "phi_closed_form", "phi2d_recurrence",
    "i_integral", "l_tilde", "d_boundary", "d_abs_sq",
    "mu0_density", "muk_density", "mu12_density", "rho_densities",
    "total_mass", "orthonormality_defect", "density_table",
    "critical_coupling", "beta_pm", "beta_of_lambda", "eigenvalue",
    "resonance_report", "s_value", "phase_table",
    "truncated_spectrum", "pv_quadrature", "empirical_cdf_distance",
    "adaptive_quadrature",
]
