"""Cross-module invariant suites run by `folnerkit verify`."""

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from folnerkit.core.exceptions import ConfigurationError, FolnerKitError
from folnerkit.entropy.hamming import hamming_ball_count, hamming_bound_report
from folnerkit.entropy.katok import katok_entropy_curve
from folnerkit.entropy.topological import TransferMatrix
from folnerkit.groups.diagnostics import generator_ratios, temperedness_constant
from folnerkit.groups.folner import folner_sequence
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.ldp.gibbs import gibbs_measure, z_identity_check
from folnerkit.ldp.potentials import canonical_potential, canonical_values
from folnerkit.ldp.tails import exact_tail
from folnerkit.ldp.variational import (
    ProductMeasureFamily,
    kl_rate,
    thm1_lower_bound,
    thm2_upper_bound,
    thm3_lower_bound,
)
from folnerkit.models.verification import CheckResult, VerificationSummary
from folnerkit.services.construction_service import thm3_construction_demo
from folnerkit.services.rate_service import rate_report
from folnerkit.shift.measures import BernoulliMeasure, sample_patterns
from folnerkit.shift.observables import Observable
from folnerkit.shift.patterns import Pattern
from folnerkit.shift.system import ShiftSystem
from folnerkit.tiling.construction import quasi_tile
from folnerkit.tiling.cores import extract_cores
from folnerkit.tiling.family import QuasiTiling, TileFamily
from folnerkit.tiling.parameters import select_tile_parameters
from folnerkit.tiling.verification import (
    representative_demand,
    verify_eps_disjoint,
    verify_quasi_tiling,
)

logger = structlog.get_logger()

LEVELS = ("quick", "full")
MUTATIONS = ("coverage-off-by-one", "drop-center")
SUITE_SEED = 20240601
# KL(0.7 || 0.5) in closed form
COIN_RATE = 0.7 * math.log(1.4) + 0.3 * math.log(0.6)

Check = Tuple[bool, str]


def _interval(model_id: str, start: int, stop: int) -> FiniteSubset:
    model = get_model(model_id)
    return FiniteSubset(model, ((i,) for i in range(start, stop)))


def _box(side: int) -> FiniteSubset:
    model = get_model("zd:2")
    return FiniteSubset(model, itertools.product(range(side), repeat=2))


def exhaustive_eps_disjoint(family: Sequence[FiniteSubset], epsilon: Fraction) -> bool:
    """Try every choice of representatives; small families only."""
    options = []
    for a in family:
        need = min(representative_demand(len(a), epsilon), len(a))
        options.append([set(c) for c in itertools.combinations(a.elements, need)])
    for choice in itertools.product(*options):
        if sum(len(s) for s in choice) == len(set().union(*choice)):
            return True
    return False


class VerificationService:
    """Runs invariant families at the quick or full level, optionally with a seeded fault."""

    def __init__(self, level: str = "quick", mutation: Optional[str] = None):
        if level not in LEVELS:
            raise ConfigurationError(f"level must be one of {LEVELS}, got {level!r}")
        if mutation is not None and mutation not in MUTATIONS:
            raise ConfigurationError(f"unknown mutation {mutation!r}; choose from {MUTATIONS}")
        self.level = level
        self.mutation = mutation
        self.full = level == "full"
        self.rng = np.random.default_rng(SUITE_SEED)

    def _record(self, family: str, name: str, check: Callable[[], Check]) -> CheckResult:
        try:
            passed, detail = check()
        except FolnerKitError as e:
            passed, detail = False, f"{e.__class__.__name__}: {e}"
        if not passed:
            logger.warning("Invariant failed", family=family, check=name, detail=detail)
        return CheckResult(family=family, name=name, passed=passed, detail=detail)

    # group and Følner invariants

    def _group_axioms(self) -> Check:
        for model_id in ("zd:1", "zd:2", "heis3", "lamplighter"):
            model = get_model(model_id)
            sample = list(model.ball_elements(2))[:12]
            e = model.identity()
            for g in sample:
                if model.mul(g, model.inv(g)) != e or model.mul(e, g) != g:
                    return False, f"inverse or identity law fails in {model_id} at {g!r}"
            for g, h, k in itertools.product(sample[:6], repeat=3):
                if model.mul(model.mul(g, h), k) != model.mul(g, model.mul(h, k)):
                    return False, f"associativity fails in {model_id}"
            if any(model.word_length(s) != 1 for s in model.generators()):
                return False, f"a generator of {model_id} has word length != 1"
        return True, "4 models"

    def _z2_ratios(self) -> Check:
        seq = folner_sequence("zd:2")
        n_max = 50 if self.full else 20
        for row in generator_ratios(seq, range(1, n_max + 1), [(1, 0)]):
            if Fraction(row.exact[str((1, 0))]) != Fraction(2, row.n):
                return False, f"ratio {row.exact} at n={row.n}, expected 2/{row.n}"
        return True, f"2/n exactly for n <= {n_max}"

    def _tempered(self) -> Check:
        n_max = 20 if self.full else 10
        report = temperedness_constant(folner_sequence("zd:1"), n_max)
        return report.constant < 2, f"constant {report.constant:.4f} at n_max={n_max}"

    def _heisenberg(self) -> Check:
        stop = 12 if self.full else 8
        rows = generator_ratios(folner_sequence("heis3"), range(4, stop + 1))
        worst = [max(row.ratios.values()) for row in rows]
        ok = all(b <= a for a, b in zip(worst, worst[1:]))
        return ok, "max generator ratios " + ", ".join(f"{v:.4f}" for v in worst)

    # tiling invariants

    def _coverage_offset(self) -> int:
        return 1 if self.mutation == "coverage-off-by-one" else 0

    def _maybe_drop(self, tiling: QuasiTiling) -> QuasiTiling:
        if self.mutation != "drop-center":
            return tiling
        centers = list(tiling.centers)
        for i, cs in enumerate(centers):
            if len(cs):
                centers[i] = FiniteSubset(cs.model, cs.elements[1:], check=False)
                break
        return dataclasses.replace(tiling, centers=tuple(centers), certificate=None)

    def _tile_parameters(self) -> Check:
        k, delta = select_tile_parameters(Fraction(1, 4))
        return k == 11 and delta == Fraction(1, 4) / (4 * 6**k), f"k={k}"

    def _exact_tiling(self) -> Check:
        target = _interval("zd:1", 0, 100)
        tiles = TileFamily.from_shapes([_interval("zd:1", 0, 10)])
        tiling = self._maybe_drop(quasi_tile(target, tiles, Fraction(1, 20)))
        cert = verify_quasi_tiling(tiling)
        expected = cert.target_size + self._coverage_offset()
        ok = cert.valid and cert.covered >= expected
        return ok, f"covered {cert.covered}/{cert.target_size}, failures {cert.failures}"

    def _random_instance(self) -> Tuple[FiniteSubset, TileFamily, Fraction]:
        eps = Fraction(int(self.rng.integers(1, 5)), 10)
        if self.rng.random() < 0.5:
            length = int(self.rng.integers(20, 61))
            sides = sorted({1} | {int(s) for s in self.rng.integers(2, 9, size=2)})
            shapes = [_interval("zd:1", 0, s) for s in sides]
            return _interval("zd:1", 0, length), TileFamily.from_shapes(shapes), eps
        side = int(self.rng.integers(6, 13))
        sides = sorted({1} | {int(s) for s in self.rng.integers(2, 5, size=2)})
        return _box(side), TileFamily.from_shapes([_box(s) for s in sides]), eps

    def _random_tilings(self) -> Check:
        count = 50 if self.full else 10
        offset = self._coverage_offset()
        for trial in range(count):
            target, tiles, eps = self._random_instance()
            tiling = self._maybe_drop(quasi_tile(target, tiles, eps))
            cert = verify_quasi_tiling(tiling)
            need = math.ceil((1 - eps) * cert.target_size) + offset
            if not cert.valid or cert.covered < need:
                return False, f"instance {trial}: {cert.failures}"
        return True, f"{count} instances"

    def _eps_disjoint_oracle(self) -> Check:
        count = 100 if self.full else 20
        model = get_model("zd:1")
        for trial in range(count):
            sets = []
            for _ in range(int(self.rng.integers(1, 4))):
                size = int(self.rng.integers(1, 7))
                picks = self.rng.choice(8, size=size, replace=False)
                sets.append(FiniteSubset(model, ((int(p),) for p in picks)))
            eps = Fraction(int(self.rng.integers(1, 10)), 10)
            flow = verify_eps_disjoint(sets, eps).feasible
            if flow != exhaustive_eps_disjoint(sets, eps):
                return False, f"instance {trial}: flow says {flow}"
        return True, f"{count} families"

    def _cores(self) -> Check:
        target = _interval("zd:1", 0, 100)
        tiles = TileFamily.from_shapes([_interval("zd:1", 0, 10)])
        tiling = quasi_tile(target, tiles, Fraction(1, 100))
        separation = _interval("zd:1", 0, 2)
        cores = extract_cores(tiling, separation, Fraction(1, 20), 1, 1)
        ratios = set(cores.ratios.values())
        thick = [cores.thickened(k) for k in cores.keys()]
        disjoint = all(a.isdisjoint(b) for a, b in itertools.combinations(thick, 2))
        ok = ratios == {Fraction(9, 10)} and disjoint and len(cores.cores) == 10
        return ok, f"ratios {sorted(str(r) for r in ratios)}, thickenings disjoint: {disjoint}"

    # entropy invariants

    def _katok(self) -> Check:
        mu = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        curve = katok_entropy_curve(mu, folner_sequence("zd:1"), 0.6, 0.1, range(1, 4))
        value = curve.value_at(3)
        return math.isclose(value, math.log(2), abs_tol=1e-12), f"n=3 value {value:.12f}"

    def _hamming(self) -> Check:
        count = hamming_ball_count(10, Fraction(1, 5), 2)
        if count != 56:
            return False, f"L(10, 0.2, 2) = {count}"
        sizes = range(1, 61) if self.full else range(1, 21)
        for size in sizes:
            for eps in (Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)):
                for q in (2, 3):
                    if not hamming_bound_report(size, eps, q).eta_bound_holds:
                        return False, f"η bound fails at n={size}, ε={eps}, q={q}"
        return True, f"L = 56; η bound holds for n <= {sizes[-1]}"

    def _golden_mean(self) -> Check:
        model = get_model("zd:1")
        forbidden = Pattern(FiniteSubset(model, [(0,), (1,)]), [1, 1])
        count = TransferMatrix(ShiftSystem(model, 2, [forbidden], safe_symbol=0)).count(10)
        return count == 144, f"{count} admissible words of length 10"

    # large-deviation invariants

    def _kl_collapse(self) -> Check:
        mu = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        phi = [0, 1]
        psi = canonical_values(mu)
        rate = kl_rate(mu.probs, phi, 0.7)
        bounds = [
            thm1_lower_bound(mu, phi, 0.7),
            thm2_upper_bound(mu, psi, phi, 0.7),
            thm3_lower_bound(mu, psi, phi, 0.7),
        ]
        ok = abs(rate - COIN_RATE) < 1e-8 and all(abs(b + rate) < 1e-6 for b in bounds)
        return ok, f"KL {rate:.8f}, bounds " + ", ".join(f"{b:.8f}" for b in bounds)

    def _exact_tail(self) -> Check:
        mu = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        phi = Observable.from_symbol_values(get_model("zd:1"), [0, 1])
        tail = exact_tail(mu, phi, Fraction(7, 10), folner_sequence("zd:1").get(10))
        # S > 7 against S >= 7
        ok = tail.strict == Fraction(56, 1024) and tail.weak == Fraction(176, 1024)
        return ok, f"strict {tail.strict}, weak {tail.weak}"

    def _canonical(self) -> Check:
        cert = canonical_potential(BernoulliMeasure([Fraction(4, 5), Fraction(1, 5)])).certificate
        return cert.holds, f"{cert.patterns_checked} patterns, error {cert.max_relative_error:.2e}"

    def _gibbs(self) -> Check:
        count = 100 if self.full else 10
        model = get_model("zd:1")
        coin = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        worst = 0.0
        for _ in range(count):
            size = int(self.rng.integers(2, 7))
            window = _interval("zd:1", 0, size)
            psi = Observable.from_symbol_values(model, [float(v) for v in self.rng.random(2)])
            draws = sample_patterns(coin, window, 8, int(self.rng.integers(0, 2**31)))
            points = {p.symbols: p for p in draws}
            measure = gibbs_measure(list(points.values()), psi, window)
            worst = max(worst, z_identity_check(measure))
        return worst <= 1e-10, f"max residual {worst:.2e} over {count} instances"

    def _rate_acceptance(self) -> Check:
        mu = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        phi = Observable.from_symbol_values(get_model("zd:1"), [0, 1])
        report = rate_report(mu, phi, None, Fraction(7, 10), folner_sequence("zd:1"), range(1, 25))
        b = report.bounds
        collapse = all(
            abs(v + COIN_RATE) < 1e-6 for v in (b.thm1_lower, b.thm2_upper, b.thm3_lower)
        )
        at_ten = next(p for p in report.points if p.n == 10)
        exact = at_ten.strict_exact == "7/128"
        return collapse and exact, f"bounds collapse: {collapse}; n=10 tail {at_ten.strict_exact}"

    def _construction(self) -> Check:
        seq = folner_sequence("zd:1")
        mu = BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])
        phi = Observable.from_symbol_values(get_model("zd:1"), [0, 1])
        if self.full:
            family = ProductMeasureFamily.build([[Fraction(1, 10), Fraction(9, 10)]])
            n, tile, c = 100, 10, Fraction(3, 5)
        else:
            family = ProductMeasureFamily.build([mu.probs])
            n, tile, c = 10, 5, Fraction(2, 5)
        report = thm3_construction_demo(
            mu,
            family,
            phi,
            canonical_values(mu),
            c,
            n,
            seq,
            TileFamily.from_indices(seq, [tile]),
            seed=SUITE_SEED,
        )
        ok = report.passed and report.shadows_in_v == report.q_enumerated and report.q_real >= 2
        return ok, f"Q_real={report.q_real}, in V: {report.shadows_in_v}/{report.q_enumerated}"

    def run(self) -> VerificationSummary:
        """Every family at this level; failures are results, never exceptions."""
        plan: List[Tuple[str, str, Callable[[], Check]]] = [
            ("group", "group laws", self._group_axioms),
            ("folner", "Z^2 box ratios", self._z2_ratios),
            ("folner", "Z box temperedness", self._tempered),
            ("folner", "Heisenberg ratios nonincreasing", self._heisenberg),
            ("tiling", "tile parameters", self._tile_parameters),
            ("tiling", "exact tiling of [0,100)", self._exact_tiling),
            ("tiling", "random quasi-tilings", self._random_tilings),
            ("tiling", "eps-disjointness against exhaustive search", self._eps_disjoint_oracle),
            ("tiling", "tile cores", self._cores),
            ("entropy", "Katok curve at n=3", self._katok),
            ("entropy", "Hamming counts and η bound", self._hamming),
            ("entropy", "golden mean count", self._golden_mean),
            ("ldp", "bound collapse", self._kl_collapse),
            ("ldp", "exact binomial tail", self._exact_tail),
            ("ldp", "canonical potential", self._canonical),
            ("ldp", "Gibbs identity", self._gibbs),
            ("construction", "shadow points in V_n", self._construction),
        ]
        if self.full:
            plan.append(("ldp", "rate report up to n=24", self._rate_acceptance))
        checks = [self._record(family, name, fn) for family, name, fn in plan]
        summary = VerificationSummary(level=self.level, mutation=self.mutation, checks=checks)
        logger.info(
            "Verification finished",
            level=self.level,
            mutation=self.mutation,
            passed=summary.passed,
            failed=summary.failed_families(),
        )
        return summary


def verify_suite(level: str = "quick", mutation: Optional[str] = None) -> VerificationSummary:
    return VerificationService(level, mutation).run()
