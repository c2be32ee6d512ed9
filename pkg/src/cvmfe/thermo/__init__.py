"""2-D CVM free energy, equilibrium profiles and h estimation."""

from .cvm_free_energy import (
    EPS0,
    CvmDomainError,
    ThermoReport,
    enthalpy_cvm,
    enthalpy_terms,
    entropy_cvm,
    entropy_terms,
    eps_from_h,
    free_energy_cvm,
    grid_eps_from_h,
    grid_h_from_eps,
    h_from_eps,
)
from .equilibrium import (
    VALIDITY_WINDOW,
    EquilibriumNotConvergedError,
    EstimationFailureError,
    HEstimate,
    OutOfValidityError,
    SingularityError,
    analytic_curve,
    analytic_equilibrium,
    analytic_profile,
    analytic_z3,
    estimate_h,
    profile_variable,
)

__all__ = [
    "EPS0",
    "CvmDomainError",
    "ThermoReport",
    "enthalpy_cvm",
    "enthalpy_terms",
    "entropy_cvm",
    "entropy_terms",
    "eps_from_h",
    "free_energy_cvm",
    "grid_eps_from_h",
    "grid_h_from_eps",
    "h_from_eps",
    "VALIDITY_WINDOW",
    "EquilibriumNotConvergedError",
    "EstimationFailureError",
    "HEstimate",
    "OutOfValidityError",
    "SingularityError",
    "analytic_curve",
    "analytic_equilibrium",
    "analytic_profile",
    "analytic_z3",
    "estimate_h",
    "profile_variable",
]
