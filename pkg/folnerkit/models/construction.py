"""Records emitted by the lower-bound construction pipeline."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ConstructionStage(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ConstructionReport(BaseModel):
    """Outcome of quasi-tiling, partition, core extraction, sampling and patching."""

    n: int
    size: int
    constants: Dict[str, float]
    stages: List[ConstructionStage] = Field(default_factory=list)
    vacuous: bool = False
    cores: int = 0
    patterns_per_core: List[int] = Field(default_factory=list)
    q_real: int = 1
    q_enumerated: int = 0
    log_q_real: float = 0.0
    log_q_bound: float = 0.0
    bound_met: bool = False
    shadows_in_v: int = 0
    pairwise_distinct: bool = True
    min_average: Optional[str] = None
    mu_mass: Optional[str] = None
    mu_mass_float: Optional[float] = None
    mu_mass_exponent: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(stage.passed for stage in self.stages)
