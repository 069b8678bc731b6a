"""Hamming-ball counts and the entropy slack η used in covering arguments."""

import math
from typing import Optional

import structlog
from pydantic import BaseModel

from folnerkit.core.exceptions import ConfigurationError
from folnerkit.core.numeric import Number, to_fraction

logger = structlog.get_logger()


class HammingBoundCheck(BaseModel):
    """Both upper bounds for L at one size; the first only holds for large sizes."""

    size: int
    epsilon: float
    q_partition: int
    count: int
    log_count: float
    binomial_bound_log: float
    binomial_bound_holds: bool
    eta: float
    eta_bound_holds: bool
    note: Optional[str] = None


def _validate(epsilon: Number, q_partition: int) -> None:
    eps = to_fraction(epsilon)
    if not 0 < eps < 1:
        raise ConfigurationError(f"epsilon must lie in (0, 1), got {epsilon}")
    if q_partition < 2:
        raise ConfigurationError(f"partition size must be at least 2, got {q_partition}")


def hamming_ball_count(size: int, epsilon: Number, q_partition: int) -> int:
    """L = Σ_{j <= floor(ε n)} C(n, j) (q - 1)^j, exactly."""
    _validate(epsilon, q_partition)
    radius = math.floor(to_fraction(epsilon) * size)
    return sum(math.comb(size, j) * (q_partition - 1) ** j for j in range(radius + 1))


def eta_bound(epsilon: Number, q_partition: int) -> float:
    """η = ε + ε log(q - 1) - ε log ε - (1 - ε) log(1 - ε)."""
    _validate(epsilon, q_partition)
    eps = float(epsilon)
    return (
        eps
        + eps * math.log(q_partition - 1)
        - eps * math.log(eps)
        - (1 - eps) * math.log(1 - eps)
    )


def hamming_bound_report(size: int, epsilon: Number, q_partition: int) -> HammingBoundCheck:
    """Compare L with ε n C(n, floor(ε n)) (q-1)^{ε n} and with exp(η n)."""
    count = hamming_ball_count(size, epsilon, q_partition)
    eps = float(epsilon)
    radius = math.floor(to_fraction(epsilon) * size)
    log_count = math.log(count)
    if eps * size > 0:
        first = (
            math.log(eps * size)
            + math.log(math.comb(size, radius))
            + eps * size * math.log(q_partition - 1)
        )
    else:
        first = -math.inf
    eta = eta_bound(epsilon, q_partition)
    check = HammingBoundCheck(
        size=size,
        epsilon=eps,
        q_partition=q_partition,
        count=count,
        log_count=log_count,
        binomial_bound_log=first,
        binomial_bound_holds=log_count <= first + 1e-12,
        eta=eta,
        eta_bound_holds=log_count <= eta * size + 1e-12,
    )
    if not check.binomial_bound_holds:
        check.note = "the binomial bound is a large-size statement and fails at this size"
        logger.warning("Binomial Hamming bound fails", size=size, epsilon=eps, q=q_partition)
    return check
