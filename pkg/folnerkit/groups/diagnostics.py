"""Invariance and temperedness diagnostics for Følner sequences."""

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError, ConfigurationError
from folnerkit.groups.base import Element
from folnerkit.groups.folner import FolnerSequence
from folnerkit.groups.subsets import symmetric_difference_ratio
from folnerkit.models.diagnostics import FolnerReport, GrowthRow, RatioRow, TemperednessReport

logger = structlog.get_logger()


def temperedness_constant(seq: FolnerSequence, n_max: int) -> TemperednessReport:
    """max over 2 <= n <= n_max of |U_{k<n} F_k⁻¹F_n| / |F_n|, by enumeration.

    Only a finite prefix is inspected, so the value is a lower estimate of the
    tempered constant.
    """
    if n_max < 2:
        raise ConfigurationError(f"n_max must be at least 2, got {n_max}")
    model = seq.model
    mul, inv = model.mul, model.inv
    limit = settings.budget.max_set_size
    per_n: Dict[int, float] = {}
    best = Fraction(0)
    inverses: List[Tuple[Element, ...]] = []
    for n in range(1, n_max + 1):
        shape = seq.get(n)
        if n >= 2:
            work = sum(len(block) for block in inverses) * len(shape)
            if work > limit:
                raise BudgetExceededError(
                    f"temperedness union at n={n} needs {work} products (budget {limit})"
                )
            union = {mul(a, b) for block in inverses for a in block for b in shape}
            ratio = Fraction(len(union), len(shape))
            per_n[n] = float(ratio)
            best = max(best, ratio)
        inverses.append(tuple(inv(g) for g in shape))
    logger.info("Temperedness estimated", sequence=seq.name, n_max=n_max, constant=float(best))
    return TemperednessReport(
        sequence=seq.name, n_max=n_max, per_n=per_n, constant=float(best)
    )


def growth_diagnostic(seq: FolnerSequence, n_max: int) -> Tuple[List[GrowthRow], bool]:
    """Rows (n, |F_n|, |F_n| / ln n) for 2 <= n <= n_max and a monotonicity flag."""
    rows = []
    monotone = True
    previous: Optional[int] = None
    for n in range(2, n_max + 1):
        size = seq.size(n)
        if previous is not None and size <= previous:
            monotone = False
            logger.warning("Non-monotone Følner growth", sequence=seq.name, n=n, size=size)
        previous = size
        rows.append(GrowthRow(n=n, size=size, size_over_log_n=size / math.log(n)))
    return rows, monotone


def generator_ratios(
    seq: FolnerSequence, n_values: Sequence[int], generators: Optional[Sequence[Element]] = None
) -> List[RatioRow]:
    """|F_n Δ gF_n| / |F_n| for each generator g (default: the model's generators)."""
    gens = list(generators) if generators is not None else list(seq.model.generators())
    rows = []
    for n in n_values:
        shape = seq.get(n)
        exact = {str(g): symmetric_difference_ratio(shape, g) for g in gens}
        rows.append(
            RatioRow(
                n=n,
                size=len(shape),
                ratios={k: float(v) for k, v in exact.items()},
                exact={k: str(v) for k, v in exact.items()},
            )
        )
    return rows


def folner_report(
    seq: FolnerSequence, n_max: int, tempered_n_max: Optional[int] = None
) -> FolnerReport:
    """Growth table, generator ratios and temperedness estimate in one record."""
    growth, monotone = growth_diagnostic(seq, n_max)
    ratios = generator_ratios(seq, range(1, n_max + 1))
    tempered = temperedness_constant(seq, tempered_n_max or n_max)
    return FolnerReport(
        sequence=seq.name,
        n_max=n_max,
        growth=growth,
        monotone_growth=monotone,
        ratios=ratios,
        temperedness=tempered,
    )
