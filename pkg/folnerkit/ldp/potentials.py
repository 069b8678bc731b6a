"""The canonical potential ψ = -log p_{x_e} and its exhaustive Bowen-ball certificate."""

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import structlog

from folnerkit.core.config import settings
from folnerkit.core.constants import CERTIFICATE_TOLERANCES
from folnerkit.core.exceptions import CertificateError, ConfigurationError
from folnerkit.groups.base import GroupModel
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.shift.measures import BernoulliMeasure
from folnerkit.shift.observables import Observable, birkhoff_sum
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()


@dataclass(frozen=True)
class PotentialCertificate:
    """μ(cylinder) = C exp(-S_Wψ) checked on every pattern of each window size."""

    window_sizes: Tuple[int, ...]
    patterns_checked: int
    max_relative_error: float
    constant: float = 1.0

    @property
    def holds(self) -> bool:
        return self.max_relative_error <= CERTIFICATE_TOLERANCES["canonical_relative"]


@dataclass(frozen=True)
class CanonicalPotential:
    measure: BernoulliMeasure
    observable: Observable
    certificate: PotentialCertificate

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(float(v) for v in self.observable.symbol_values())


def canonical_values(mu: BernoulliMeasure) -> Tuple[float, ...]:
    if not mu.full_support:
        raise ConfigurationError("canonical potential needs a full-support measure")
    return tuple(-math.log(p) for p in mu.probs)


def _windows(model: GroupModel, max_sites: int) -> Tuple[FiniteSubset, ...]:
    radius = 0
    while len(model.ball_elements(radius)) < max_sites:
        radius += 1
    sites = model.ball_elements(radius)
    return tuple(FiniteSubset(model, sites[:s], check=False) for s in range(1, max_sites + 1))


def canonical_potential(
    mu: BernoulliMeasure, model: Optional[GroupModel] = None, max_sites: Optional[int] = None
) -> CanonicalPotential:
    """ψ_a = -log p_a, certified against exact cylinder masses on windows of 1..12 sites.

    Windows with more than `settings.budget.certificate_patterns` patterns are
    left out; the cut is logged.

    Raises:
        ConfigurationError: some symbol has probability zero
        CertificateError: the product identity fails beyond tolerance
    """
    values = canonical_values(mu)
    model = model or get_model("zd:1")
    max_sites = max_sites or settings.budget.certificate_sites
    psi = Observable.from_symbol_values(model, values, name="psi")
    q = mu.alphabet_size
    checked = 0
    worst = 0.0
    sizes = []
    budget = settings.budget.certificate_patterns
    for window in _windows(model, max_sites):
        if q ** len(window) > budget:
            logger.debug(
                "Certificate windows cut by the pattern budget",
                requested_sites=max_sites,
                kept_sites=len(window) - 1,
                budget=budget,
            )
            break
        sizes.append(len(window))
        for symbols in itertools.product(range(q), repeat=len(window)):
            x = Pattern(window, symbols)
            mass = float(mu.cylinder(x))
            predicted = math.exp(-float(birkhoff_sum(psi, x, window)))
            worst = max(worst, abs(mass - predicted) / mass)
            checked += 1
    certificate = PotentialCertificate(
        window_sizes=tuple(sizes), patterns_checked=checked, max_relative_error=worst
    )
    if not certificate.holds:
        raise CertificateError(
            f"canonical potential off by relative {worst:.3e}", stage="canonical_potential"
        )
    logger.info("Canonical potential certified", patterns=checked, max_relative_error=worst)
    return CanonicalPotential(measure=mu, observable=psi, certificate=certificate)


def is_canonical(
    mu: BernoulliMeasure, psi_values: Tuple[float, ...], rel_tol: float = 1e-9
) -> bool:
    """Whether ψ coincides with -log p symbolwise."""
    if not mu.full_support or len(psi_values) != mu.alphabet_size:
        return False
    return all(
        math.isclose(float(v), w, rel_tol=rel_tol, abs_tol=rel_tol)
        for v, w in zip(psi_values, canonical_values(mu))
    )
