"""Large-deviation rate reports."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class RatePoint(BaseModel):
    """Tail probabilities of A_{F_n}φ at one n, both strict and weak."""

    n: int
    size: int
    method: str
    strict: float
    weak: float
    strict_exact: Optional[str] = None
    weak_exact: Optional[str] = None
    exponent_strict: Optional[float] = None
    exponent_weak: Optional[float] = None
    interval_strict: Optional[List[float]] = None
    interval_weak: Optional[List[float]] = None
    samples: int = 0


class VariationalBound(BaseModel):
    """The three suprema and the relative-entropy reference value."""

    thm1_lower: float
    thm2_upper: float
    thm3_lower: float
    reference: float
    restricted_to_products: bool = True


class RateReport(BaseModel):
    points: List[RatePoint]
    bounds: VariationalBound
    canonical_psi: bool
    ordering_checked: bool
    tail_mean_exponent: Optional[float] = None
    metadata: Dict[str, object] = Field(default_factory=dict)
