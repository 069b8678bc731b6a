"""Følner and temperedness diagnostic tables."""

from typing import Dict, List

from pydantic import BaseModel


class GrowthRow(BaseModel):
    n: int
    size: int
    size_over_log_n: float


class RatioRow(BaseModel):
    n: int
    size: int
    ratios: Dict[str, float]
    exact: Dict[str, str]


class TemperednessReport(BaseModel):
    sequence: str
    n_max: int
    per_n: Dict[int, float]
    constant: float
    label: str = "lower estimate of the tempered constant over the computed prefix"


class FolnerReport(BaseModel):
    sequence: str
    n_max: int
    growth: List[GrowthRow]
    monotone_growth: bool
    ratios: List[RatioRow]
    temperedness: TemperednessReport
