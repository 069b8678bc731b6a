"""Lower-bound construction: tile F_n, sample on tile cores, patch by weak specification."""

import itertools
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog

from folnerkit.core.exceptions import (
    CertificateError,
    ConfigurationError,
    InfeasibleConstraintError,
    UnsupportedSystemError,
)
from folnerkit.core.numeric import Number, log_fraction, to_fraction
from folnerkit.groups.folner import FolnerSequence
from folnerkit.groups.subsets import FiniteSubset, ball
from folnerkit.ldp.variational import ProductMeasureFamily
from folnerkit.models.construction import ConstructionReport, ConstructionStage
from folnerkit.shift.measures import BernoulliMeasure, sample_patterns
from folnerkit.shift.metric import bowen_radius, bowen_window
from folnerkit.shift.observables import Observable, birkhoff_avg, birkhoff_sum
from folnerkit.shift.patterns import Pattern
from folnerkit.shift.specification import weak_spec_shadow
from folnerkit.shift.system import full_shift
from folnerkit.tiling.construction import quasi_tile
from folnerkit.tiling.cores import CoreKey, extract_cores
from folnerkit.tiling.family import TileFamily
from folnerkit.tiling.partition import partition_subfamilies

logger = structlog.get_logger()

SUPPORTED_MODELS = ("zd:1", "zd:2")
MAX_TARGET_SITES = 400
# Draws per requested pattern before a core is declared unfillable
ATTEMPTS_PER_SAMPLE = 64


class ConstructionService:
    """Runs the lower-bound pipeline for one n on a Z or Z² full shift."""

    def __init__(
        self,
        mu: BernoulliMeasure,
        family: ProductMeasureFamily,
        phi: Observable,
        psi_values: Sequence[Number],
        c: Number,
        epsilon: Number = Fraction(3, 4),
        gamma: Optional[Number] = None,
        separation_radius: Optional[int] = None,
        partition_tol: Optional[Number] = None,
    ):
        if not phi.local:
            raise UnsupportedSystemError("the construction needs an identity-coordinate φ")
        if phi.model.name not in SUPPORTED_MODELS:
            raise UnsupportedSystemError(f"construction runs on Z or Z², not {phi.model.name}")
        self.mu = mu
        self.family = family
        self.phi = phi
        self.c = to_fraction(c)
        self.epsilon = to_fraction(epsilon)
        self.model = phi.model
        self.system = full_shift(self.model, mu.alphabet_size)

        phi_values = list(phi.symbol_values())
        phi_values += [Fraction(0)] * (mu.alphabet_size - len(phi_values))
        self.phi_values = phi_values
        self.psi_values = [to_fraction(v) for v in psi_values]
        if len(self.psi_values) != mu.alphabet_size:
            raise ConfigurationError("ψ must give one value per symbol")
        if len(family.measures[0]) != mu.alphabet_size:
            raise ConfigurationError("family measures and μ must share the alphabet")

        # constants of the construction
        self.k = len(family)
        self.lam_mean = family.mean(phi_values)
        self.delta = (self.lam_mean - self.c) / 7
        if self.delta <= 0:
            raise InfeasibleConstraintError(
                f"∫φ dλ = {float(self.lam_mean):.4f} does not exceed c = {float(self.c):.4f}",
                stage="thm3_construction_demo",
            )
        self.gamma = to_fraction(gamma) if gamma is not None else self.delta / 13
        if not 0 < self.gamma < self.delta / 12:
            raise ConfigurationError("γ must lie in (0, δ/12)")
        sup = [abs(v) for v in self.psi_values + phi_values]
        self.m_bound = max(max(sup), Fraction(1))
        radius = bowen_radius(self.epsilon)
        if separation_radius is not None:
            if separation_radius < radius:
                raise ConfigurationError(
                    f"separation radius {separation_radius} is below the Bowen radius {radius}"
                )
            radius = separation_radius
        self.separation = ball(self.model, radius)
        self.l_count = mu.alphabet_size ** len(self.separation)
        scale = self.k * self.m_bound * self.l_count * len(self.separation)
        self.tile_epsilon = self.gamma / scale
        self.partition_tol = 3 * self.gamma / scale
        if partition_tol is not None:
            self.partition_tol = to_fraction(partition_tol)
            if not 0 < self.partition_tol < 1:
                raise ConfigurationError("partition tolerance must lie in (0, 1)")

    def constants(self) -> Dict[str, float]:
        return {
            "k": float(self.k),
            "delta": float(self.delta),
            "gamma": float(self.gamma),
            "M": float(self.m_bound),
            "L": float(self.l_count),
            "F_size": float(len(self.separation)),
            "epsilon": float(self.epsilon),
            "tile_epsilon": float(self.tile_epsilon),
            "partition_tol": float(self.partition_tol),
            "core_threshold": float(1 - 3 * self.gamma / (self.m_bound * self.l_count)),
            "lambda_mean": float(self.lam_mean),
            "c": float(self.c),
        }

    def log_count_bound(self, size: int) -> float:
        """|F_n| Σ (a_i - 3γ/(kML|F|)) (h(λ_i) - 4γ)."""
        g = float(self.gamma)
        total = 0.0
        for a, h in zip(self.family.weights, self.family.entropies()):
            total += (float(a) - float(self.partition_tol)) * (h - 4 * g)
        return size * total

    def _core_patterns(
        self,
        nu: BernoulliMeasure,
        mean: Fraction,
        placed: FiniteSubset,
        tile_size: int,
        count: int,
        stream: np.random.SeedSequence,
    ) -> List[Pattern]:
        """Distinct draws from ν on the core's Bowen window whose Birkhoff sum clears the bar."""
        window = bowen_window(placed, self.epsilon).window
        bar = tile_size * (mean - 2 * self.delta - 3 * self.gamma)
        kept: List[Pattern] = []
        seen = set()
        for x in sample_patterns(nu, window, ATTEMPTS_PER_SAMPLE * count, stream):
            key = x.restrict(placed).symbols
            if key in seen or birkhoff_sum(self.phi, x, placed) < bar:
                continue
            seen.add(key)
            kept.append(x)
            if len(kept) == count:
                break
        return kept

    def run(
        self,
        target: FiniteSubset,
        n: int,
        tiles: TileFamily,
        seed: int,
        samples_per_core: int = 2,
        max_shadows: int = 200,
        fill: int = 0,
    ) -> ConstructionReport:
        """Tile, partition, extract cores, sample, patch and check every shadow point.

        Args:
            target: F_n
            n: index of F_n, echoed in the report
            tiles: tile shapes for the quasi-tiling
            seed: root seed; each core gets its own spawned stream
            samples_per_core: separated patterns drawn per core
            max_shadows: shadow points enumerated and checked
            fill: symbol written outside the cores

        Returns:
            ConstructionReport with per-stage outcomes

        Raises:
            CertificateError: a stage's certificate fails, or a core cannot be filled
        """
        if len(target) > MAX_TARGET_SITES:
            raise ConfigurationError(f"|F_n|={len(target)} exceeds {MAX_TARGET_SITES} sites")
        if samples_per_core < 1 or max_shadows < 1:
            raise ConfigurationError("samples_per_core and max_shadows must be positive")
        size = len(target)
        report = ConstructionReport(n=n, size=size, constants=self.constants())

        tiling = quasi_tile(target, tiles, self.tile_epsilon)
        cert = tiling.certificate
        assert cert is not None
        report.vacuous = tiling.placed_count() == 0
        detail = f"{tiling.placed_count()} translates, coverage {cert.coverage:.4f}"
        if not cert.covers and not report.vacuous:
            raise CertificateError(
                f"coverage {cert.coverage_exact} of F_{n} is below"
                f" 1 - ε = {float(1 - self.tile_epsilon):.6g}",
                stage="quasi_tile",
            )
        if report.vacuous:
            detail += " (vacuous: no translate fits)"
        report.stages.append(
            ConstructionStage(name="quasi_tile", passed=cert.covers, detail=detail)
        )

        if report.vacuous:
            report.stages.append(
                ConstructionStage(name="partition", passed=True, detail="vacuous: no translates")
            )
            families: List[List] = [[] for _ in range(self.k)]
        else:
            split = partition_subfamilies(tiling, self.family.weights, self.partition_tol)
            families = split.families
            report.stages.append(
                ConstructionStage(
                    name="partition",
                    passed=True,
                    detail=f"max deviation {float(split.max_deviation):.4g}",
                )
            )

        cores = extract_cores(tiling, self.separation, self.gamma, self.m_bound, self.l_count)
        report.cores = len(cores.cores)
        report.stages.append(
            ConstructionStage(
                name="extract_cores",
                passed=True,
                detail=f"min ratio {float(cores.min_ratio()):.4f}",
            )
        )

        # sampling: one stream per core, in core key order
        owner: Dict[CoreKey, int] = {}
        for i, members in enumerate(families):
            for j, c in members:
                owner[(c, j)] = i
        keys = cores.keys()
        streams = np.random.SeedSequence(seed).spawn(max(1, len(keys)))
        choices: List[List[Pattern]] = []
        placed_sets: List[FiniteSubset] = []
        for key, stream in zip(keys, streams):
            i = owner[key]
            nu = BernoulliMeasure(self.family.measures[i])
            mean = nu.mean(self.phi_values)
            placed = cores.placed(key)
            tile_size = len(cores.shapes[key[1]])
            kept = self._core_patterns(nu, mean, placed, tile_size, samples_per_core, stream)
            if not kept:
                raise CertificateError(
                    f"no admissible pattern drawn for core at {key[0]!r}", stage="sampling"
                )
            choices.append(kept)
            placed_sets.append(placed)
        report.patterns_per_core = [len(options) for options in choices]
        report.q_real = math.prod(report.patterns_per_core)
        report.log_q_real = sum(math.log(len(options)) for options in choices)
        report.log_q_bound = self.log_count_bound(size)
        report.bound_met = report.log_q_real >= report.log_q_bound
        report.stages.append(
            ConstructionStage(
                name="sampling", passed=True, detail=f"{len(choices)} cores, Q_real={report.q_real}"
            )
        )

        # patching and exact membership in V_n
        shadows: List[Pattern] = []
        in_v = 0
        lowest: Optional[Fraction] = None
        mass = Fraction(0)
        for combo in itertools.islice(itertools.product(*choices), max_shadows):
            result = weak_spec_shadow(
                self.system,
                list(combo),
                placed_sets,
                self.separation,
                self.epsilon,
                window=target,
                fill=fill,
            )
            y = result.point.restrict(target)
            average = birkhoff_avg(self.phi, y, target)
            lowest = average if lowest is None else min(lowest, average)
            if average > self.c:
                in_v += 1
            mass += self.mu.cylinder(y)
            shadows.append(y)
        report.q_enumerated = len(shadows)
        report.shadows_in_v = in_v
        report.min_average = str(lowest) if lowest is not None else None

        distinct = True
        for a, b in itertools.combinations(shadows, 2):
            if a.symbols == b.symbols:
                distinct = False
                break
        report.pairwise_distinct = distinct
        report.stages.append(
            ConstructionStage(
                name="patch",
                passed=distinct,
                detail=f"{len(shadows)} shadows, cylinders on F_n pairwise disjoint: {distinct}",
            )
        )
        membership = in_v == len(shadows) or report.vacuous
        detail = f"{in_v}/{len(shadows)} shadows with A_Fφ > c"
        if report.vacuous:
            detail += " (vacuous: no translate placed)"
        report.stages.append(ConstructionStage(name="membership", passed=membership, detail=detail))

        report.mu_mass = str(mass)
        report.mu_mass_float = float(mass)
        report.mu_mass_exponent = log_fraction(mass) / size if mass > 0 else None
        logger.info(
            "Construction finished",
            n=n,
            q_real=report.q_real,
            enumerated=report.q_enumerated,
            in_v=in_v,
            passed=report.passed,
        )
        return report


def thm3_construction_demo(
    mu: BernoulliMeasure,
    family: ProductMeasureFamily,
    phi: Observable,
    psi_values: Sequence[Number],
    c: Number,
    n: int,
    seq: FolnerSequence,
    tiles: TileFamily,
    seed: int,
    epsilon: Number = Fraction(3, 4),
    gamma: Optional[Number] = None,
    separation_radius: Optional[int] = None,
    partition_tol: Optional[Number] = None,
    samples_per_core: int = 2,
    max_shadows: int = 200,
    fill: int = 0,
) -> ConstructionReport:
    """Run the construction on F_n of `seq`."""
    service = ConstructionService(
        mu,
        family,
        phi,
        psi_values,
        c,
        epsilon=epsilon,
        gamma=gamma,
        separation_radius=separation_radius,
        partition_tol=partition_tol,
    )
    return service.run(
        seq.get(n),
        n,
        tiles,
        seed,
        samples_per_core=samples_per_core,
        max_shadows=max_shadows,
        fill=fill,
    )
