"""Config-driven runner behind every CLI subcommand."""

import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import structlog
from pydantic import BaseModel, ValidationError

from folnerkit.core.exceptions import ConfigurationError
from folnerkit.entropy.katok import katok_entropy_curve, smb_trace
from folnerkit.entropy.partition import partition_entropy
from folnerkit.entropy.topological import topological_entropy_curve
from folnerkit.groups.diagnostics import folner_report
from folnerkit.groups.folner import FolnerSequence, explicit_sequence, folner_sequence
from folnerkit.groups.io import load_subset
from folnerkit.groups.registry import get_model
from folnerkit.ldp.potentials import canonical_values
from folnerkit.ldp.variational import ProductMeasureFamily
from folnerkit.models.entropy import CurvePoint, EntropyCurve
from folnerkit.models.experiment import ExperimentConfig
from folnerkit.services.construction_service import thm3_construction_demo
from folnerkit.services.rate_service import rate_report
from folnerkit.services.report_service import ReportService
from folnerkit.services.verification_service import verify_suite
from folnerkit.shift.measures import BernoulliMeasure, sample_pattern
from folnerkit.shift.observables import Observable
from folnerkit.shift.patterns import Pattern
from folnerkit.shift.system import ShiftSystem
from folnerkit.tiling.construction import quasi_tile
from folnerkit.tiling.family import TileFamily
from folnerkit.tiling.nesting import nest_translates
from folnerkit.tiling.parameters import select_tile_indices

logger = structlog.get_logger()

PathLike = Union[str, Path]


@dataclass
class RunResult:
    """What a run produced: the record, a per-n table and the overall verdict."""

    operation: str
    passed: bool
    record: Union[BaseModel, Dict[str, Any]]
    header: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    report_path: Optional[Path] = None
    curves_path: Optional[Path] = None


def load_config(path: PathLike, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Parse a TOML experiment file (dotted keys allowed) and validate it.

    Raises:
        ConfigurationError: unreadable file, TOML syntax error or schema violation
    """
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except OSError as e:
        raise ConfigurationError(f"cannot read {path}: {e}", stage="config") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"{path}: {e}", stage="config") from e
    return build_config(data, overrides)


def build_config(
    data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None
) -> ExperimentConfig:
    merged = dict(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        return ExperimentConfig.model_validate(merged)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigurationError(f"invalid experiment config: {problems}", stage="config") from e


class ExperimentService:
    """Builds the objects a config describes and runs the selected operation."""

    def __init__(self, config: ExperimentConfig, base_dir: Optional[PathLike] = None):
        self.config = config
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()
        self.model = get_model(config.group.model)

    # builders

    def sequence(self) -> FolnerSequence:
        group = self.config.group
        if group.folner == "builtin":
            return folner_sequence(group.model, cap=group.cap)
        sets = [load_subset(self.model, self.base_dir / p) for p in group.sets]
        return explicit_sequence(self.model, sets)

    def measure(self) -> BernoulliMeasure:
        return BernoulliMeasure(self.config.measure.p)

    def phi(self) -> Observable:
        return Observable.from_symbol_values(self.model, self.config.observable.phi, name="phi")

    def psi_values(self) -> Optional[Sequence[Any]]:
        psi = self.config.observable.psi
        return None if psi == "canonical" else list(psi)

    def family(self, mu: BernoulliMeasure) -> ProductMeasureFamily:
        spec = self.config.measure
        if not spec.family:
            return ProductMeasureFamily.build([mu.probs])
        return ProductMeasureFamily.build(spec.family, spec.weights or None)

    def system(self) -> ShiftSystem:
        spec = self.config.system
        forbidden = []
        for rows in spec.forbidden:
            values = {}
            for row in rows:
                if len(row) < 2:
                    raise ConfigurationError("forbidden rows are [coords..., symbol]")
                values[self.model.parse(row[:-1])] = row[-1]
            forbidden.append(Pattern.from_mapping(self.model, values))
        return ShiftSystem(self.model, spec.alphabet, forbidden, spec.safe_symbol)

    def n_range(self) -> range:
        return range(self.config.params.n_min, self.config.params.n_max + 1)

    # operations

    def run_folner(self) -> RunResult:
        params = self.config.params
        report = folner_report(self.sequence(), params.n_max, params.tempered_n_max)
        gens = sorted(report.ratios[0].ratios) if report.ratios else []
        rows = [[r.n, r.size] + [r.ratios[g] for g in gens] for r in report.ratios]
        return RunResult("folner", True, report, ["n", "size"] + gens, rows)

    def run_tile(self) -> RunResult:
        params = self.config.params
        seq = self.sequence()
        if params.tile_indices:
            tiles = TileFamily.from_indices(seq, params.tile_indices)
        else:
            tiles = select_tile_indices(seq, params.epsilon, params.n_min, params.k_override)
        record: Dict[str, Any] = {
            "indices": list(tiles.indices or ()),
            "delta": str(tiles.delta) if tiles.delta is not None else None,
            "tiling": None,
        }
        if params.target_n is None:
            rows = [[i + 1, n, seq.size(n)] for i, n in enumerate(tiles.indices or ())]
            return RunResult("tile", True, record, ["tile", "n", "size"], rows)
        if self.config.group.folner == "explicit":
            tiles = nest_translates(tiles)
        tiling = quasi_tile(seq.get(params.target_n), tiles, params.epsilon)
        tiling_record = tiling.to_record(target_name=f"F_{params.target_n}")
        record["tiling"] = tiling_record.model_dump(mode="json")
        rows = [
            [i + 1, size, len(tiling_record.centers.get(i, []))]
            for i, size in enumerate(tiling_record.tile_sizes)
        ]
        passed = tiling_record.certificate.valid
        return RunResult("tile", passed, record, ["tile", "size", "centers"], rows)

    def run_entropy(self) -> RunResult:
        params = self.config.params
        seq = self.sequence()
        kind = params.kind
        if kind == "topological":
            curve = topological_entropy_curve(self.system(), seq, self.n_range())
        elif kind == "katok":
            curve = katok_entropy_curve(
                self.measure(), seq, params.epsilon, params.delta, self.n_range()
            )
        elif kind == "smb":
            if self.config.seed is None:
                raise ConfigurationError("smb traces sample a point; set seed", stage="config")
            mu = self.measure()
            x = sample_pattern(mu, seq.get(params.n_max), self.config.seed)
            curve = smb_trace(mu, x, seq, self.n_range())
        else:
            mu = self.measure()
            points = []
            for n in self.n_range():
                f = seq.get(n)
                points.append(CurvePoint(n=n, size=len(f), value=partition_entropy(mu, f) / len(f)))
            curve = EntropyCurve.from_points("partition", points)
        rows = [[p.n, p.size, p.value] for p in curve.points]
        return RunResult("entropy", True, curve, ["n", "size", "value"], rows)

    def run_ldp(self) -> RunResult:
        config = self.config
        mu = self.measure()
        family = self.family(mu) if config.measure.family else None
        report = rate_report(
            mu,
            self.phi(),
            self.psi_values(),
            config.params.c,
            self.sequence(),
            self.n_range(),
            samples=config.samples,
            seed=config.seed,
            family=family,
        )
        header = ["n", "size", "method", "strict", "weak", "exponent_strict", "exponent_weak"]
        rows = [
            [p.n, p.size, p.method, p.strict, p.weak, p.exponent_strict, p.exponent_weak]
            for p in report.points
        ]
        return RunResult("ldp", True, report, header, rows)

    def run_thm3demo(self) -> RunResult:
        config = self.config
        params = config.params
        if not params.tile_indices:
            raise ConfigurationError("thm3demo needs params.tile_indices", stage="config")
        if config.seed is None:
            raise ConfigurationError("thm3demo needs a seed", stage="config")
        seq = self.sequence()
        mu = self.measure()
        psi = self.psi_values()
        report = thm3_construction_demo(
            mu,
            self.family(mu),
            self.phi(),
            canonical_values(mu) if psi is None else psi,
            params.c,
            params.n if params.n is not None else params.n_max,
            seq,
            TileFamily.from_indices(seq, params.tile_indices),
            config.seed,
            epsilon=params.epsilon,
            gamma=params.gamma,
            separation_radius=params.separation_radius,
            partition_tol=params.tol,
            samples_per_core=params.samples_per_core,
            max_shadows=params.max_shadows,
            fill=params.fill_symbol,
        )
        rows = [[s.name, s.passed, s.detail] for s in report.stages]
        return RunResult("thm3demo", report.passed, report, ["stage", "passed", "detail"], rows)

    def run_verify(self) -> RunResult:
        summary = verify_suite(self.config.level, self.config.mutation)
        rows = [[c.family, c.name, c.passed, c.detail] for c in summary.checks]
        return RunResult(
            "verify", summary.passed, summary, ["family", "check", "passed", "detail"], rows
        )

    def run(self, out_dir: Optional[PathLike] = None) -> RunResult:
        """Dispatch on `operation`; with an output directory, write report.json and curves.csv."""
        operation = self.config.operation
        handler = getattr(self, f"run_{operation}")
        logger.info("Experiment started", operation=operation, seed=self.config.seed)
        result: RunResult = handler()
        if out_dir is not None:
            writer = ReportService(out_dir, self.config.config_hash())
            result.report_path = writer.write_report(operation, result.record, result.passed)
            result.curves_path = writer.write_curves(result.header, _finite_rows(result.rows))
        logger.info("Experiment finished", operation=operation, passed=result.passed)
        return result


def _finite_rows(rows: List[List[Any]]) -> List[List[Any]]:
    return [
        [str(v) if isinstance(v, float) and not math.isfinite(v) else v for v in row]
        for row in rows
    ]
