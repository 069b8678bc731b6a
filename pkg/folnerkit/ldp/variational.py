"""Variational rate bounds restricted to product measures, solved by exponential tilting."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
import structlog
from scipy.special import logsumexp

from folnerkit.core.config import settings
from folnerkit.core.exceptions import ConfigurationError, InfeasibleConstraintError
from folnerkit.core.numeric import Number, probability_vector, to_fraction
from folnerkit.entropy.partition import relative_entropy_product, symbol_entropy
from folnerkit.processors.tilting import solve_moment
from folnerkit.shift.measures import BernoulliMeasure

logger = structlog.get_logger()


@dataclass(frozen=True)
class ProductMeasureFamily:
    """λ = Σ a_i λ_i with each λ_i a product measure."""

    measures: Tuple[Tuple[Fraction, ...], ...]
    weights: Tuple[Fraction, ...]

    @classmethod
    def build(
        cls, measures: Sequence[Sequence[Number]], weights: Optional[Sequence[Number]] = None
    ) -> "ProductMeasureFamily":
        if not measures:
            raise ConfigurationError("product family needs at least one measure")
        try:
            vectors = tuple(probability_vector(m) for m in measures)
        except ValueError as e:
            raise ConfigurationError(f"invalid product measure: {e}") from e
        if weights is None:
            weights = [Fraction(1, len(vectors))] * len(vectors)
        a = tuple(to_fraction(w) for w in weights)
        if len(a) != len(vectors):
            raise ConfigurationError(f"{len(a)} weights for {len(vectors)} measures")
        if any(w < 0 for w in a) or sum(a) != 1:
            raise ConfigurationError("family weights must be nonnegative and sum to 1")
        if len({len(v) for v in vectors}) != 1:
            raise ConfigurationError("family measures must share an alphabet")
        return cls(measures=vectors, weights=a)

    def __len__(self) -> int:
        return len(self.measures)

    def mean(self, phi_values: Sequence[Number]) -> Fraction:
        """∫φ dλ."""
        vals = [to_fraction(v) for v in phi_values]
        total = Fraction(0)
        for a, m in zip(self.weights, self.measures):
            total += a * sum((p * v for p, v in zip(m, vals)), Fraction(0))
        return total

    def entropies(self) -> Tuple[float, ...]:
        return tuple(symbol_entropy(m) for m in self.measures)


def _floats(values: Sequence[Number]) -> np.ndarray:
    return np.array([float(to_fraction(v)) for v in values], dtype=float)


def kl_rate(probs: Sequence[Number], phi_values: Sequence[Number], c: Number) -> float:
    """inf { D(q || p) : E_q φ >= c }, the relative-entropy rate for i.i.d. averages.

    Raises:
        InfeasibleConstraintError: c exceeds max φ over the support of p
    """
    p = _floats(probs)
    phi = _floats(phi_values)
    if p.shape != phi.shape:
        raise ConfigurationError(f"{p.size} probabilities for {phi.size} observable values")
    solution = solve_moment(p, phi, float(to_fraction(c)))
    return solution.divergence


def _strict(c: Number) -> float:
    return float(to_fraction(c)) + settings.solver.strict_margin


def thm1_lower_bound(
    mu: BernoulliMeasure,
    phi_values: Sequence[Number],
    c: Number,
    family: Optional[ProductMeasureFamily] = None,
) -> float:
    """sup { h(ν) - h_μ({F_n}; ν) : ν product, ∫φ dν > c }.

    Over product ν the objective is -D(ν || μ). With a family, the supremum is
    taken over its members only.
    """
    _check_alphabet(mu, phi_values, phi_values)
    threshold = to_fraction(c)
    if family is None:
        top = max(to_fraction(v) for p, v in zip(mu.probs, phi_values) if p > 0)
        if threshold >= top:
            raise InfeasibleConstraintError(
                f"no ν with ∫φ dν > {c}: φ is at most {top} on the support of μ",
                stage="thm1_lower_bound",
            )
        return -kl_rate(mu.probs, phi_values, _strict(c))
    best = -math.inf
    vals = [to_fraction(v) for v in phi_values]
    for nu in family.measures:
        if sum((p * v for p, v in zip(nu, vals)), Fraction(0)) > threshold:
            best = max(best, symbol_entropy(nu) - relative_entropy_product(mu, nu))
    if best == -math.inf:
        raise InfeasibleConstraintError(f"no family member has ∫φ dν > {c}")
    return best


def free_energy_bound(
    psi_values: Sequence[Number], phi_values: Sequence[Number], c: float
) -> float:
    """sup { H(q) - Σ q ψ : E_q φ >= c } = log Z - inf D(q || r), r ∝ e^{-ψ}."""
    psi = _floats(psi_values)
    log_z = float(logsumexp(-psi))
    r = np.exp(-psi - log_z)
    return log_z - solve_moment(r, _floats(phi_values), c).divergence


def thm2_upper_bound(
    mu: BernoulliMeasure, psi_values: Sequence[Number], phi_values: Sequence[Number], c: Number
) -> float:
    """sup { h(ν) - ∫ψ dν : ∫φ dν >= c } over product ν."""
    _check_alphabet(mu, psi_values, phi_values)
    return free_energy_bound(psi_values, phi_values, float(to_fraction(c)))


def thm3_lower_bound(
    mu: BernoulliMeasure, psi_values: Sequence[Number], phi_values: Sequence[Number], c: Number
) -> float:
    """sup { h(ν) - ∫ψ dν : ∫φ dν > c } over product ν (strict, as c plus the margin)."""
    _check_alphabet(mu, psi_values, phi_values)
    return free_energy_bound(psi_values, phi_values, _strict(c))


def _check_alphabet(
    mu: BernoulliMeasure, psi_values: Sequence[Number], phi_values: Sequence[Number]
) -> None:
    if not len(psi_values) == len(phi_values) == mu.alphabet_size:
        raise ConfigurationError(
            f"ψ ({len(psi_values)}), φ ({len(phi_values)}) and μ ({mu.alphabet_size}) "
            "must share the alphabet"
        )
