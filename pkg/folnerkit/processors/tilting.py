"""Exponential tilting and the one-dimensional moment solver."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import structlog
from scipy.special import logsumexp

from folnerkit.core.config import settings
from folnerkit.core.exceptions import InfeasibleConstraintError

logger = structlog.get_logger()


@dataclass(frozen=True)
class TiltSolution:
    """q_λ ∝ p e^{λφ} with its mean and D(q_λ || p)."""

    lam: float
    q: np.ndarray
    mean: float
    divergence: float
    iterations: int
    boundary: bool = False


def tilted(p: np.ndarray, phi: np.ndarray, lam: float) -> TiltSolution:
    """The tilted law restricted to the support of p."""
    support = p > 0
    logits = np.full(p.shape, -np.inf)
    logits[support] = np.log(p[support]) + lam * phi[support]
    log_z = logsumexp(logits[support])
    q = np.zeros_like(p)
    q[support] = np.exp(logits[support] - log_z)
    mean = float(np.dot(q, phi))
    # D(q || p) = λ E_q φ - log Σ p e^{λφ}
    divergence = max(lam * mean - float(log_z), 0.0)
    return TiltSolution(lam=lam, q=q, mean=mean, divergence=divergence, iterations=0)


def solve_moment(
    probs: Sequence[float],
    phi_values: Sequence[float],
    c: float,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> TiltSolution:
    """Minimise D(q || p) subject to E_q φ >= c.

    Bisection on λ >= 0; the mean of q_λ is nondecreasing in λ.

    Raises:
        InfeasibleConstraintError: c exceeds max φ over the support of p
    """
    tol = settings.solver.moment_tol if tol is None else tol
    max_iter = settings.solver.max_iter if max_iter is None else max_iter
    p = np.asarray(probs, dtype=float)
    phi = np.asarray(phi_values, dtype=float)
    if p.shape != phi.shape:
        raise ValueError(f"{p.size} probabilities for {phi.size} observable values")
    support = p > 0
    top = float(phi[support].max())
    base = tilted(p, phi, 0.0)
    if c <= base.mean:
        return base
    if c > top + tol:
        raise InfeasibleConstraintError(
            f"constraint E[phi] >= {c} is infeasible: max phi over the support is {top}"
        )
    if c >= top - tol:
        # the constraint forces all mass onto argmax φ
        at_top = support & (phi >= top - tol)
        q = np.where(at_top, p, 0.0)
        mass = q.sum()
        return TiltSolution(
            lam=math.inf,
            q=q / mass,
            mean=top,
            divergence=-math.log(mass),
            iterations=0,
            boundary=True,
        )

    lo, hi = 0.0, 1.0
    while tilted(p, phi, hi).mean < c:
        lo, hi = hi, hi * 2.0
        if hi > 1e12:
            raise InfeasibleConstraintError(f"tilt parameter diverged for c={c}")
    best = tilted(p, phi, hi)
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        cur = tilted(p, phi, mid)
        if cur.mean < c:
            lo = mid
        else:
            hi = mid
            best = cur
        if abs(cur.mean - c) <= tol:
            best = cur
            break
    else:
        logger.warning("Tilting solver hit the iteration cap", c=c, gap=abs(best.mean - c))
    return TiltSolution(
        lam=best.lam,
        q=best.q,
        mean=best.mean,
        divergence=best.divergence,
        iterations=it,
    )
