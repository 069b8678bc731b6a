"""Entropy curves with their tail-window summaries."""

import math
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class CurvePoint(BaseModel):
    n: int
    size: int
    value: float


class EntropyCurve(BaseModel):
    """Values indexed by n; the tail window is the final third of the computed points."""

    label: str
    points: List[CurvePoint] = Field(default_factory=list)
    skipped: Dict[int, str] = Field(default_factory=dict)
    tail_min: Optional[float] = None
    tail_max: Optional[float] = None
    tail_last: Optional[float] = None
    note: str = "tail window over the final third of n; finite-n surrogate for liminf/limsup"

    @classmethod
    def from_points(
        cls, label: str, points: List[CurvePoint], skipped: Optional[Dict[int, str]] = None
    ) -> "EntropyCurve":
        ordered = sorted(points, key=lambda p: p.n)
        for a, b in zip(ordered, ordered[1:]):
            if a.n == b.n:
                raise ValueError(f"duplicate n={a.n} in entropy curve")
        for p in ordered:
            if not math.isfinite(p.value):
                raise ValueError(f"non-finite value at n={p.n}")
        curve = cls(label=label, points=ordered, skipped=dict(skipped or {}))
        if ordered:
            width = max(1, math.ceil(len(ordered) / 3))
            tail = [p.value for p in ordered[-width:]]
            curve.tail_min = min(tail)
            curve.tail_max = max(tail)
            curve.tail_last = tail[-1]
        return curve

    def value_at(self, n: int) -> float:
        for p in self.points:
            if p.n == n:
                return p.value
        raise KeyError(n)
