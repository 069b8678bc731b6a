"""Experiment configuration schema (TOML with dotted section keys)."""

import hashlib
import json
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Operation = Literal["folner", "tile", "entropy", "ldp", "thm3demo", "verify"]


class GroupSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    model: str = "zd:1"
    folner: Literal["builtin", "explicit"] = "builtin"
    cap: Optional[int] = None
    sets: List[str] = Field(default_factory=list)


class MeasureSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: List[Union[float, str]] = Field(default_factory=lambda: [0.5, 0.5])
    family: List[List[Union[float, str]]] = Field(default_factory=list)
    weights: List[Union[float, str]] = Field(default_factory=list)


class ObservableSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    phi: List[Union[float, str]] = Field(default_factory=lambda: [0, 1])
    psi: Union[Literal["canonical"], List[Union[float, str]]] = "canonical"


class SystemSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alphabet: int = 2
    forbidden: List[List[List[int]]] = Field(default_factory=list)
    safe_symbol: Optional[int] = None


class ParamSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_min: int = 1
    n_max: int = 10
    n: Optional[int] = None
    epsilon: float = 0.6
    delta: float = 0.1
    c: float = 0.7
    kind: Literal["katok", "smb", "topological", "partition"] = "katok"
    tile_indices: List[int] = Field(default_factory=list)
    target_n: Optional[int] = None
    k_override: Optional[int] = None
    gamma: Optional[float] = None
    separation_radius: Optional[int] = None
    tol: Optional[float] = None
    samples_per_core: int = 2
    max_shadows: int = 200
    fill_symbol: int = 0
    tempered_n_max: Optional[int] = None


class ExperimentConfig(BaseModel):
    """One run of one subcommand; `seed` is required whenever sampling happens."""

    model_config = ConfigDict(extra="forbid")

    operation: Operation = "folner"
    seed: Optional[int] = None
    samples: int = Field(default=0, ge=0)
    level: Literal["quick", "full"] = "quick"
    mutation: Optional[Literal["coverage-off-by-one", "drop-center"]] = None
    group: GroupSpec = Field(default_factory=GroupSpec)
    measure: MeasureSpec = Field(default_factory=MeasureSpec)
    observable: ObservableSpec = Field(default_factory=ObservableSpec)
    system: SystemSpec = Field(default_factory=SystemSpec)
    params: ParamSpec = Field(default_factory=ParamSpec)

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        if self.samples > 0 and self.seed is None:
            raise ValueError("seed is required when samples > 0")
        if self.operation == "thm3demo" and self.seed is None:
            raise ValueError("seed is required for thm3demo")
        if self.params.n_min < 1 or self.params.n_max < self.params.n_min:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.group.folner == "explicit" and not self.group.sets:
            raise ValueError("explicit Følner sequences need group.sets files")
        return self

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
