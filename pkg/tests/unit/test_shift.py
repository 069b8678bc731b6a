"""Unit tests for patterns, measures, observables, the metric and weak specification."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from folnerkit.core.exceptions import (
    ConfigurationError,
    ThickeningOverlapError,
    UnsupportedSystemError,
    WindowError,
)
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import FiniteSubset, ball, translate_right
from folnerkit.shift.measures import (
    BernoulliMeasure,
    EmpiricalMeasure,
    MeasureModel,
    sample_pattern,
    sample_symbols,
)
from folnerkit.shift.metric import bowen_radius, bowen_window, metric_dist
from folnerkit.shift.observables import Observable, birkhoff_avg, birkhoff_sum
from folnerkit.shift.patterns import Pattern, dump_pattern, load_pattern, shift_pattern
from folnerkit.shift.specification import weak_spec_shadow
from folnerkit.shift.system import ShiftSystem, count_admissible, full_shift, is_admissible


@pytest.fixture
def golden(z1):
    """Golden-mean shift: no two adjacent 1s, 0 is safe."""
    forbidden = Pattern.from_mapping(z1, {(0,): 1, (1,): 1})
    return ShiftSystem(z1, 2, [forbidden], safe_symbol=0)


class TestPattern:
    """Test finite patterns."""

    def test_length_mismatch(self, interval):
        """Test a symbol tuple must fit the window."""
        with pytest.raises(WindowError):
            Pattern(interval(0, 3), (0, 1))

    def test_restrict(self, interval):
        """Test restriction keeps the symbols of the sub-window."""
        x = Pattern(interval(0, 4), (1, 0, 1, 1))
        assert x.restrict(interval(2, 4)).symbols == (1, 1)
        with pytest.raises(WindowError):
            x.restrict(interval(3, 6))

    def test_shift_pattern(self, interval):
        """Test (g·x)_h = x_{hg} and the moved window."""
        x = Pattern(interval(0, 3), (0, 1, 1))
        moved = shift_pattern((1,), x)
        assert moved.window == interval(-1, 2)
        assert moved[(0,)] == 1
        assert moved[(-1,)] == 0

    def test_file_round_trip(self, z1, tmp_path):
        """Test a pattern survives dump and load."""
        x = Pattern.from_mapping(z1, {(0,): 1, (2,): 0, (5,): 1})
        path = tmp_path / "x.txt"
        dump_pattern(x, path)
        assert load_pattern(z1, path) == x


class TestMeasures:
    """Test Bernoulli and empirical measures."""

    def test_bernoulli_cylinder(self, interval):
        """Test cylinder masses are exact products."""
        mu = BernoulliMeasure(["1/4", "3/4"])
        assert mu.cylinder(Pattern(interval(0, 3), (0, 1, 1))) == Fraction(9, 64)

    def test_float_probabilities(self):
        """Test floats are read through their decimal repr."""
        mu = BernoulliMeasure([0.7, 0.3])
        assert mu.probs == (Fraction(7, 10), Fraction(3, 10))

    @pytest.mark.parametrize("probs", [[0.5, 0.6], [1.0], [-0.5, 1.5]])
    def test_invalid_vectors(self, probs):
        """Test invalid probability vectors raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            BernoulliMeasure(probs)

    def test_empirical_cylinder(self, interval):
        """Test empirical masses count matching samples."""
        window = interval(0, 2)
        samples = [Pattern(window, s) for s in [(0, 1), (0, 1), (1, 1)]]
        nu = EmpiricalMeasure(samples)
        assert nu.cylinder(Pattern(window, (0, 1))) == Fraction(2, 3)
        assert nu.cylinder(Pattern(interval(0, 1), (1,))) == Fraction(1, 3)

    def test_empirical_window_must_match(self, interval):
        """Test samples on different windows are rejected."""
        with pytest.raises(WindowError):
            EmpiricalMeasure([Pattern(interval(0, 1), (0,)), Pattern(interval(0, 2), (0, 1))])

    def test_sampling_is_seeded(self, coin, interval):
        """Test sampling is deterministic for a seed and needs one."""
        window = interval(0, 20)
        assert sample_pattern(coin, window, 7) == sample_pattern(coin, window, 7)
        with pytest.raises(ConfigurationError):
            sample_pattern(coin, window, None)

    def test_sampling_empirical_unsupported(self, interval):
        """Test sampling is limited to Bernoulli measures."""
        nu = EmpiricalMeasure([Pattern(interval(0, 1), (0,))])
        with pytest.raises(UnsupportedSystemError):
            sample_symbols(nu, 1, 1, 0)

    def test_measure_model_is_abstract(self):
        """Test the base class cannot be instantiated."""
        with pytest.raises(TypeError):
            MeasureModel()

    @pytest.mark.parametrize("model_id", ["zd:2", "heis3", "lamplighter"])
    def test_cylinders_partition_unit_mass(self, model_id):
        """Test the cylinders of a window carry total mass one."""
        window = ball(get_model(model_id), 1)
        mu = BernoulliMeasure(["1/2", "1/3", "1/6"])
        total = sum(
            mu.cylinder(Pattern(window, symbols))
            for symbols in itertools.product(range(3), repeat=len(window))
        )
        assert total == 1

    def test_empirical_cylinders_partition_unit_mass(self, interval):
        """Test empirical cylinders on a sub-window sum to one."""
        samples = [Pattern(interval(0, 4), s) for s in [(0, 1, 1, 0), (1, 1, 0, 0), (0, 1, 0, 1)]]
        nu = EmpiricalMeasure(samples)
        total = sum(
            nu.cylinder(Pattern(interval(1, 3), symbols))
            for symbols in itertools.product(range(2), repeat=2)
        )
        assert total == 1

    def test_bernoulli_is_shift_invariant(self, z2):
        """Test μ(g·x) = μ(x) for cylinders of a Bernoulli measure."""
        rng = np.random.default_rng(3)
        mu = BernoulliMeasure(["1/5", "4/5"])
        window = ball(z2, 2)
        for g in [(1, 0), (0, -3), (2, 5)]:
            x = Pattern(window, rng.integers(0, 2, len(window)).tolist())
            assert mu.cylinder(shift_pattern(g, x)) == mu.cylinder(x)


class TestObservable:
    """Test observables and Birkhoff sums."""

    def test_window_needs_identity(self, interval):
        """Test the dependence window must contain the identity."""
        with pytest.raises(ConfigurationError):
            Observable(interval(1, 2), {(0,): 0, (1,): 1})

    def test_table_keys_match_window(self, interval):
        """Test table keys must have one symbol per window site."""
        with pytest.raises(ConfigurationError):
            Observable(interval(0, 2), {(0,): 1})

    def test_birkhoff(self, frequency, interval):
        """Test sums and averages of the frequency observable."""
        x = Pattern(interval(0, 3), (0, 1, 1))
        assert birkhoff_sum(frequency, x, interval(0, 3)) == 2
        assert birkhoff_avg(frequency, x, interval(0, 3)) == Fraction(2, 3)

    def test_two_site_observable(self, interval):
        """Test a φ reading x_g and x_{1+g}."""
        table = {(a, b): a * b for a in (0, 1) for b in (0, 1)}
        phi = Observable(interval(0, 2), table, name="pair")
        x = Pattern(interval(0, 4), (1, 1, 0, 1))
        assert not phi.local
        assert birkhoff_sum(phi, x, interval(0, 3)) == 1
        with pytest.raises(WindowError):
            birkhoff_sum(phi, x, interval(0, 4))

    def test_symbol_values(self, z1):
        """Test per-symbol values come back as exact rationals."""
        phi = Observable.from_symbol_values(z1, [0, "1/3", 0.5])
        assert phi.symbol_values() == (0, Fraction(1, 3), Fraction(1, 2))
        assert phi.sup_norm() == Fraction(1, 2)

    @pytest.mark.parametrize("model_id", ["zd:1", "heis3", "lamplighter"])
    def test_birkhoff_sum_shift_equivariant(self, model_id):
        """Test S_F φ(g·x) = S_{Fg} φ(x) for a two-site observable."""
        model = get_model(model_id)
        rng = np.random.default_rng(5)
        second = model.generators()[-1]
        window = FiniteSubset(model, [model.identity(), second])
        table = {(a, b): Fraction(a + 2 * b, 3) for a in (0, 1) for b in (0, 1)}
        phi = Observable(window, table, name="pair")
        support = ball(model, 3)
        f = ball(model, 1)
        for g in model.generators():
            x = Pattern(support, rng.integers(0, 2, len(support)).tolist())
            moved = shift_pattern(g, x)
            assert birkhoff_sum(phi, moved, f) == birkhoff_sum(phi, x, translate_right(f, g))

    def test_birkhoff_sum_additive(self, interval):
        """Test S_{A∪B} φ = S_A φ + S_B φ for disjoint A and B."""
        rng = np.random.default_rng(8)
        phi = Observable(
            interval(0, 2), {(a, b): a - Fraction(b, 2) for a in (0, 1) for b in (0, 1)}
        )
        x = Pattern(interval(0, 31), rng.integers(0, 2, 31).tolist())
        for _ in range(20):
            cut = sorted(rng.choice(30, size=2, replace=False).tolist())
            a = interval(0, cut[0])
            b = interval(cut[0], 30)
            c = interval(cut[1], 30)
            assert birkhoff_sum(phi, x, a.union(b)) == birkhoff_sum(phi, x, a) + birkhoff_sum(
                phi, x, b
            )
            assert birkhoff_sum(phi, x, a.union(c)) == birkhoff_sum(phi, x, a) + birkhoff_sum(
                phi, x, c
            )


class TestMetric:
    """Test the word-length metric and Bowen windows."""

    @pytest.mark.parametrize(
        "epsilon, radius",
        [(Fraction(3, 4), 0), (Fraction(1, 2), 1), (Fraction(1, 4), 2), (1, 0)],
    )
    def test_bowen_radius(self, epsilon, radius):
        """Test the radius is the largest m with 2^-m >= ε."""
        assert bowen_radius(epsilon) == radius

    def test_bowen_radius_range(self):
        """Test ε outside (0, 1] is rejected."""
        with pytest.raises(ConfigurationError):
            bowen_radius(0)

    def test_bowen_window(self, interval):
        """Test B_2 [0,3) is [-2, 5)."""
        bw = bowen_window(interval(0, 3), Fraction(1, 4))
        assert len(bw.window) == 7
        assert bw.window == interval(-2, 5)

    def test_metric_distance(self, interval):
        """Test exact distances and window-limited upper bounds."""
        x = Pattern(interval(-2, 3), (0, 0, 0, 0, 0))
        y = Pattern(interval(-2, 3), (0, 0, 0, 1, 0))
        d = metric_dist(x, y)
        assert d.exact and d.value == Fraction(1, 2)
        same = metric_dist(x, x)
        assert not same.exact
        assert same.value == Fraction(1, 8)
        assert same.radius == 2

    @pytest.mark.parametrize("epsilon", [Fraction(1, 4), Fraction(1, 2)])
    def test_bowen_window_matches_metric(self, interval, epsilon):
        """Test agreeing on B_m F is d(g·x, g·y) < ε for every g in F."""
        rng = np.random.default_rng(13)
        support = interval(-4, 8)
        f = interval(0, 4)
        bw = bowen_window(f, epsilon)
        outcomes = set()
        for _ in range(200):
            symbols = rng.integers(0, 2, len(support)).tolist()
            x = Pattern(support, symbols)
            symbols[int(rng.integers(len(support)))] ^= 1
            y = Pattern(support, symbols)
            agree = all(x[h] == y[h] for h in bw.window)
            close = all(
                metric_dist(shift_pattern(g, x), shift_pattern(g, y)).value < epsilon for g in f
            )
            assert agree == close
            outcomes.add(agree)
        assert outcomes == {True, False}


class TestShiftSystem:
    """Test systems and admissibility."""

    def test_safe_symbol_must_be_unconstrained(self, z1):
        """Test a safe symbol inside a forbidden pattern is rejected."""
        forbidden = Pattern.from_mapping(z1, {(0,): 1, (1,): 1})
        with pytest.raises(ConfigurationError):
            ShiftSystem(z1, 2, [forbidden], safe_symbol=1)

    def test_golden_mean_counts(self, golden, interval):
        """Test admissible words of length 5 number F_7 = 13."""
        assert count_admissible(golden, interval(0, 5)) == 13
        assert not is_admissible(golden, Pattern(interval(0, 3), (0, 1, 1)))

    def test_two_dimensional_count(self, z2):
        """Test horizontal golden-mean rows on a 2x2 box."""
        forbidden = Pattern.from_mapping(z2, {(0, 0): 1, (1, 0): 1})
        system = ShiftSystem(z2, 2, [forbidden], safe_symbol=0)
        box = FiniteSubset(z2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        assert count_admissible(system, box) == 9


class TestWeakSpecification:
    """Test constructive shadowing."""

    def test_full_shift_shadow(self, z1, interval):
        """Test two pieces are copied and the gap is filled."""
        system = full_shift(z1, 2)
        x1 = Pattern(interval(-1, 3), (1, 1, 0, 1))
        x2 = Pattern(interval(4, 8), (0, 1, 1, 1))
        result = weak_spec_shadow(
            system,
            [x1, x2],
            [interval(0, 2), interval(5, 7)],
            ball(z1, 1),
            Fraction(1, 2),
            window=interval(-1, 8),
            fill=0,
        )
        y = result.point
        assert y[(3,)] == 0
        assert y[(0,)] == 1
        assert y[(6,)] == 1
        assert result.certified
        assert all(d <= Fraction(1, 2) for d in result.max_distance)

    def test_overlapping_thickenings(self, z1, interval):
        """Test pieces whose thickened sets meet are refused."""
        system = full_shift(z1, 2)
        x = Pattern(interval(-1, 5), (0,) * 6)
        with pytest.raises(ThickeningOverlapError):
            weak_spec_shadow(
                system, [x, x], [interval(0, 2), interval(2, 4)], ball(z1, 1), Fraction(1, 2)
            )

    def test_sft_uses_safe_symbol(self, golden, z1, interval):
        """Test an SFT shadow is filled with the safe symbol and stays admissible."""
        x = Pattern(interval(-1, 3), (1, 0, 0, 1))
        result = weak_spec_shadow(
            golden, [x], [interval(0, 2)], ball(z1, 1), Fraction(1, 2), window=interval(-1, 5)
        )
        assert result.admissible
        assert result.point[(3,)] == 0

    def test_sft_without_safe_symbol(self, z1, interval):
        """Test SFTs without a safe symbol are unsupported."""
        forbidden = Pattern.from_mapping(z1, {(0,): 1, (1,): 1})
        system = ShiftSystem(z1, 2, [forbidden])
        x = Pattern(interval(-1, 3), (0, 0, 0, 0))
        with pytest.raises(UnsupportedSystemError):
            weak_spec_shadow(system, [x], [interval(0, 2)], ball(z1, 1), Fraction(1, 2))
