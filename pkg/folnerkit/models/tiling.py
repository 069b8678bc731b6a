"""Quasi-tiling records."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class TilingCertificate(BaseModel):
    """Condition-by-condition outcome of an independent tiling check."""

    contained: bool
    eps_disjoint: bool
    blocks_disjoint: bool
    covers: bool
    coverage: float
    coverage_exact: str
    covered: int
    target_size: int
    failures: List[str] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.contained and self.eps_disjoint and self.blocks_disjoint and self.covers


class TilingRecord(BaseModel):
    """Serialised form of a quasi-tiling: target, ε, centres per tile, certificate."""

    target: str
    target_size: int
    epsilon: str
    tile_sizes: List[int]
    tile_indices: Optional[List[int]] = None
    centers: Dict[int, List[List[int]]]
    certificate: TilingCertificate
    precondition_met: Optional[bool] = None
