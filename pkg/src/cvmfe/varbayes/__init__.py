"""Discrete variational free-energy identities."""

from .distributions import (
    ConditioningOnNullError,
    DiscreteJoint,
    Distribution,
    DistributionError,
    conditional_from_joint,
    marginal,
)
from .identities import (
    IDENTITY_TOLERANCE,
    DivergenceInfiniteError,
    FreeEnergyDecomposition,
    IdentityViolationError,
    InfiniteSurprisalError,
    JensenChain,
    decompose,
    elbo,
    expected_energy,
    jensen_chain_check,
    kl_divergence,
    mix_with_uniform,
    shannon_entropy,
    surprisal,
    variational_free_energy,
)

__all__ = [
    "ConditioningOnNullError",
    "DiscreteJoint",
    "Distribution",
    "DistributionError",
    "conditional_from_joint",
    "marginal",
    "IDENTITY_TOLERANCE",
    "DivergenceInfiniteError",
    "FreeEnergyDecomposition",
    "IdentityViolationError",
    "InfiniteSurprisalError",
    "JensenChain",
    "decompose",
    "elbo",
    "expected_energy",
    "jensen_chain_check",
    "kl_divergence",
    "mix_with_uniform",
    "shannon_entropy",
    "surprisal",
    "variational_free_energy",
]
