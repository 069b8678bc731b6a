"""Large deviations: tails, variational bounds, canonical potentials and Gibbs measures."""

from folnerkit.ldp.gibbs import GibbsAtomicMeasure, gibbs_measure, z_identity_check
from folnerkit.ldp.potentials import CanonicalPotential, canonical_potential, is_canonical
from folnerkit.ldp.tails import MonteCarloTail, TailProbability, exact_tail, monte_carlo_tail
from folnerkit.ldp.variational import (
    ProductMeasureFamily,
    kl_rate,
    thm1_lower_bound,
    thm2_upper_bound,
    thm3_lower_bound,
)

__all__ = [
    "CanonicalPotential",
    "GibbsAtomicMeasure",
    "MonteCarloTail",
    "ProductMeasureFamily",
    "TailProbability",
    "canonical_potential",
    "exact_tail",
    "gibbs_measure",
    "is_canonical",
    "kl_rate",
    "monte_carlo_tail",
    "thm1_lower_bound",
    "thm2_upper_bound",
    "thm3_lower_bound",
    "z_identity_check",
]
