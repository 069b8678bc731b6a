"""Rate reports: per-n tail exponents next to the three variational bounds."""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
import structlog

from folnerkit.core.config import settings
from folnerkit.core.constants import CERTIFICATE_TOLERANCES
from folnerkit.core.exceptions import CertificateError, ConfigurationError, UnsupportedSystemError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.folner import FolnerSequence
from folnerkit.ldp.potentials import canonical_potential, is_canonical
from folnerkit.ldp.tails import exact_tail, monte_carlo_tail
from folnerkit.ldp.variational import (
    ProductMeasureFamily,
    kl_rate,
    thm1_lower_bound,
    thm2_upper_bound,
    thm3_lower_bound,
)
from folnerkit.models.rate import RatePoint, RateReport, VariationalBound
from folnerkit.shift.measures import BernoulliMeasure
from folnerkit.shift.observables import Observable

logger = structlog.get_logger()

# |F| above which exact tails are not attempted
EXACT_TAIL_LIMIT = 10_000


def _exponent(log_value: float, size: int) -> Optional[float]:
    return log_value / size if math.isfinite(log_value) else None


def _stream_seeds(seed: Optional[int], count: int) -> List[Optional[int]]:
    if seed is None:
        return [None] * count
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


def rate_point(
    mu: BernoulliMeasure,
    phi: Observable,
    c: Number,
    seq: FolnerSequence,
    n: int,
    samples: int = 0,
    seed: Optional[int] = None,
) -> RatePoint:
    """Tails of A_{F_n}φ at one n: exact when φ is local, Monte Carlo otherwise."""
    f = seq.get(n)
    size = len(f)
    if phi.local and size <= EXACT_TAIL_LIMIT:
        tail = exact_tail(mu, phi, c, f)
        return RatePoint(
            n=n,
            size=size,
            method="exact" if tail.exact else "log-classes",
            strict=float(tail.strict),
            weak=float(tail.weak),
            strict_exact=str(tail.strict) if isinstance(tail.strict, Fraction) else None,
            weak_exact=str(tail.weak) if isinstance(tail.weak, Fraction) else None,
            exponent_strict=_exponent(tail.log_strict, size),
            exponent_weak=_exponent(tail.log_weak, size),
        )
    if samples < 1:
        raise UnsupportedSystemError(
            f"no exact tail for {phi.name} at n={n}; set samples > 0", stage="rate_report"
        )
    mc = monte_carlo_tail(mu, phi, c, f, samples, seed)
    return RatePoint(
        n=n,
        size=size,
        method="monte-carlo",
        strict=mc.strict,
        weak=mc.weak,
        exponent_strict=_exponent(math.log(mc.strict), size) if mc.strict > 0 else None,
        exponent_weak=_exponent(math.log(mc.weak), size) if mc.weak > 0 else None,
        interval_strict=list(mc.interval_strict),
        interval_weak=list(mc.interval_weak),
        samples=samples,
    )


def _tail_mean(points: List[RatePoint]) -> Optional[float]:
    values = [p.exponent_strict for p in points if p.exponent_strict is not None]
    if not values:
        return None
    width = max(1, math.ceil(len(values) / 3))
    return sum(values[-width:]) / width


def rate_report(
    mu: BernoulliMeasure,
    phi: Observable,
    psi_values: Optional[Sequence[Number]],
    c: Number,
    seq: FolnerSequence,
    n_range: Sequence[int],
    samples: int = 0,
    seed: Optional[int] = None,
    family: Optional[ProductMeasureFamily] = None,
) -> RateReport:
    """Empirical exponents for every n plus the variational bounds and the KL reference.

    Per-n points are computed concurrently (settings.run.workers threads),
    each with its own seed stream; the report lists them in n order.

    Args:
        mu: Bernoulli reference measure
        phi: observable (identity-coordinate for exact tails)
        psi_values: per-symbol potential, None for the canonical one
        c: threshold
        seq: Følner sequence
        n_range: indices to evaluate
        samples: Monte Carlo samples for non-local φ
        seed: required when samples > 0
        family: restricts the first lower bound to these product measures

    Raises:
        CertificateError: with canonical ψ, lower bound > reference or reference > upper bound
    """
    ns = sorted(set(n_range))
    if not ns:
        raise ConfigurationError("rate_report needs at least one n")
    if samples > 0 and seed is None:
        raise ConfigurationError("seed is required when samples > 0")
    if psi_values is None:
        psi_values = canonical_potential(mu, seq.model).values
    canonical = is_canonical(mu, tuple(float(to_fraction(v)) for v in psi_values))

    seeds = _stream_seeds(seed, len(ns))
    workers = max(1, settings.run.workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(rate_point, mu, phi, c, seq, n, samples, s) for n, s in zip(ns, seeds)
        ]
        points = [future.result() for future in futures]

    phi_values = list(phi.symbol_values())
    phi_values += [Fraction(0)] * (mu.alphabet_size - len(phi_values))
    reference = kl_rate(mu.probs, phi_values, c)
    bounds = VariationalBound(
        thm1_lower=thm1_lower_bound(mu, phi_values, c, family),
        thm2_upper=thm2_upper_bound(mu, psi_values, phi_values, c),
        thm3_lower=thm3_lower_bound(mu, psi_values, phi_values, c),
        reference=reference,
        restricted_to_products=True,
    )
    tol = CERTIFICATE_TOLERANCES["bound_ordering"]
    if bounds.thm1_lower > -reference + tol:
        raise CertificateError(
            f"lower bound {bounds.thm1_lower:.6f} above -KL {-reference:.6f}", stage="rate_report"
        )
    if canonical:
        if bounds.thm3_lower > -reference + tol or -reference > bounds.thm2_upper + tol:
            raise CertificateError(
                f"bounds out of order: {bounds.thm3_lower:.6f}, {-reference:.6f}, "
                f"{bounds.thm2_upper:.6f}",
                stage="rate_report",
            )

    report = RateReport(
        points=points,
        bounds=bounds,
        canonical_psi=canonical,
        ordering_checked=canonical,
        tail_mean_exponent=_tail_mean(points),
        metadata={
            "c": str(to_fraction(c)),
            "mu": [str(p) for p in mu.probs],
            "phi": [str(v) for v in phi_values],
            "psi": [float(to_fraction(v)) for v in psi_values],
            "sequence": seq.name,
            "n_range": ns,
            "samples": samples,
            "seed": seed,
        },
    )
    logger.info(
        "Rate report assembled",
        points=len(points),
        reference=reference,
        tail_mean=report.tail_mean_exponent,
    )
    return report
