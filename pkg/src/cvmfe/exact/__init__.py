"""Brute-force oracles: balanced-grid enumeration and the canonical ensemble."""

from .boltzmann import (
    BoltzmannReport,
    ThermoIdentityError,
    enthalpy_via_logQ_derivative,
    log_partition_function,
    partition_function,
)
from .enumeration import (
    MAX_ENUMERATION_SITES,
    EnumerationResult,
    TooLargeError,
    balanced_energies,
    enumerate_min_free_energy,
)

__all__ = [
    "BoltzmannReport",
    "ThermoIdentityError",
    "enthalpy_via_logQ_derivative",
    "log_partition_function",
    "partition_function",
    "MAX_ENUMERATION_SITES",
    "EnumerationResult",
    "TooLargeError",
    "balanced_energies",
    "enumerate_min_free_energy",
]
