"""Unit tests for entropy estimators."""

import math
from fractions import Fraction

import pytest

from folnerkit.core.exceptions import ConfigurationError, FolnerKitError
from folnerkit.entropy.hamming import eta_bound, hamming_ball_count, hamming_bound_report
from folnerkit.entropy.katok import (
    katok_covering_number,
    katok_entropy_curve,
    katok_lower_estimate,
    smb_trace,
)
from folnerkit.entropy.partition import (
    local_exponent,
    partition_entropy,
    relative_entropy_product,
    symbol_entropy,
)
from folnerkit.entropy.topological import (
    TransferMatrix,
    admissible_count,
    topological_entropy_curve,
)
from folnerkit.groups.folner import folner_sequence
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.models.entropy import CurvePoint, EntropyCurve
from folnerkit.shift.measures import BernoulliMeasure, sample_pattern
from folnerkit.shift.metric import bowen_window
from folnerkit.shift.patterns import Pattern
from folnerkit.shift.system import ShiftSystem, full_shift

# H(0.8, 0.2) in nats
H_08 = -(0.8 * math.log(0.8) + 0.2 * math.log(0.2))


@pytest.fixture
def golden(z1):
    forbidden = Pattern.from_mapping(z1, {(0,): 1, (1,): 1})
    return ShiftSystem(z1, 2, [forbidden], safe_symbol=0)


class TestPartitionEntropy:
    """Test partition entropies and cross-entropies."""

    def test_symbol_entropy(self):
        """Test H(0.8, 0.2)."""
        assert symbol_entropy([0.8, 0.2]) == pytest.approx(0.500402, abs=1e-6)

    def test_product_partition(self, coin, interval):
        """Test H(P_F) = |F| ln 2 for a fair coin."""
        assert partition_entropy(coin, interval(0, 4)) == pytest.approx(4 * math.log(2))

    def test_relative_entropy_product(self, coin):
        """Test the cross-entropy against the fair coin is ln 2 for every ν."""
        assert relative_entropy_product(coin, [0.3, 0.7]) == pytest.approx(math.log(2))

    def test_relative_entropy_off_support(self):
        """Test ν charging a μ-null symbol gives +inf."""
        mu = BernoulliMeasure([1, 0])
        assert relative_entropy_product(mu, [0.5, 0.5]) == math.inf

    def test_local_exponent(self, coin, interval):
        """Test the Bowen-ball exponent is ln 2 when the window is F itself."""
        x = Pattern(interval(0, 5), (0, 1, 1, 0, 1))
        assert local_exponent(coin, x, interval(0, 5), Fraction(3, 4)) == pytest.approx(
            math.log(2)
        )


class TestKatok:
    """Test covering numbers and their curves."""

    def test_fair_coin_cover(self, coin, interval):
        """Test eight cylinders are needed to cover 0.9 of [0,3)."""
        assert katok_covering_number(coin, interval(0, 3), 0.6, 0.1) == 8

    def test_fair_coin_curve(self, coin, boxes):
        """Test the curve is ln 2 at n = 3 and near ln 2 on the tail window."""
        curve = katok_entropy_curve(coin, boxes, 0.6, 0.1, range(1, 13))
        assert curve.value_at(3) == pytest.approx(math.log(8) / 3)
        assert abs(curve.tail_max - math.log(2)) < 0.05
        assert abs(curve.tail_min - math.log(2)) < 0.05

    def test_biased_coin_curve(self, boxes):
        """Test the Bernoulli(0.8) curve sits within 0.05 of H(p) for n in [8, 12]."""
        mu = BernoulliMeasure([0.8, 0.2])
        curve = katok_entropy_curve(mu, boxes, 0.6, 0.1, range(8, 13))
        for point in curve.points:
            assert abs(point.value - H_08) < 0.05

    def test_delta_range(self, coin, interval):
        """Test δ outside [0, 1) is rejected."""
        with pytest.raises(ConfigurationError):
            katok_covering_number(coin, interval(0, 3), 0.6, 1)

    def test_monotone_in_delta(self, interval):
        """Test allowing more uncovered mass never needs more balls."""
        mu = BernoulliMeasure([0.7, 0.3])
        counts = [
            katok_covering_number(mu, interval(0, 6), 0.3, delta)
            for delta in (0, 0.05, 0.1, 0.3, 0.5, 0.9)
        ]
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        assert counts[0] == 2**8

    def test_monotone_in_window(self, interval):
        """Test longer sets and smaller ε never need fewer balls."""
        mu = BernoulliMeasure([0.7, 0.3])
        by_size = [katok_covering_number(mu, interval(0, n), 0.6, 0.2) for n in range(1, 11)]
        assert all(a <= b for a, b in zip(by_size, by_size[1:]))
        by_eps = [katok_covering_number(mu, interval(0, 4), eps, 0.2) for eps in (0.6, 0.3, 0.2)]
        assert all(a <= b for a, b in zip(by_eps, by_eps[1:]))

    @pytest.mark.parametrize("probs", [["1/2", "1/2"], ["4/5", "1/5"], ["1/2", "1/3", "1/6"]])
    def test_bernoulli_sandwich(self, interval, probs):
        """Test (1 - δ) / max cylinder mass <= N(F, ε, δ) <= q^|B_m F|."""
        mu = BernoulliMeasure(probs)
        delta = Fraction(1, 10)
        for n in range(1, 7):
            f = interval(0, n)
            sites = len(bowen_window(f, 0.3).window)
            count = katok_covering_number(mu, f, 0.3, delta)
            assert (1 - delta) / max(mu.probs) ** sites <= count <= mu.alphabet_size**sites

    def test_fair_coin_count_is_exact(self, coin, interval):
        """Test N = ceil((1 - δ) 2^|F|) for a fair coin with ε above 1/2."""
        for n in range(1, 11):
            count = katok_covering_number(coin, interval(0, n), 0.6, Fraction(1, 10))
            assert count == math.ceil(Fraction(9, 10) * 2**n)

    def test_lower_estimate(self):
        """Test the explicit lower estimate formula."""
        value = katok_lower_estimate(math.log(2), 0.1, 0.2, 0.1, 10)
        assert value == pytest.approx(math.exp(10 * (math.log(2) - 0.3)) * 0.9 / 4)


class TestSmbTrace:
    """Test Shannon-McMillan-Breiman traces."""

    def test_constant_point(self, coin, boxes, interval):
        """Test the fair-coin trace is ln 2 at every n."""
        x = Pattern.constant(interval(0, 6), 1)
        curve = smb_trace(coin, x, boxes, range(1, 7))
        assert all(p.value == pytest.approx(math.log(2)) for p in curve.points)

    def test_random_point_near_entropy(self, boxes, interval):
        """Test a sampled Bernoulli(0.8) trace stays within five standard errors of H(p)."""
        mu = BernoulliMeasure([0.8, 0.2])
        x = sample_pattern(mu, interval(0, 1000), seed=31)
        second_moment = 0.8 * math.log(0.8) ** 2 + 0.2 * math.log(0.2) ** 2
        sigma = math.sqrt(second_moment - H_08**2)
        curve = smb_trace(mu, x, boxes, [250, 500, 1000])
        for point in curve.points:
            assert abs(point.value - H_08) <= 5 * sigma / math.sqrt(point.size)

    def test_null_cylinder(self, boxes, interval):
        """Test a point in a null cylinder is reported."""
        mu = BernoulliMeasure([1, 0])
        x = Pattern.constant(interval(0, 2), 1)
        with pytest.raises(FolnerKitError):
            smb_trace(mu, x, boxes, [1])


class TestTopological:
    """Test topological entropy approximants."""

    def test_transfer_matrix(self, golden):
        """Test golden-mean words of length 10 number 144."""
        matrix = TransferMatrix(golden)
        assert matrix.count(10) == 144
        assert matrix.count(1) == 2

    def test_golden_mean_curve(self, golden, boxes):
        """Test the approximant at n = 10 is ln(144) / 10."""
        curve = topological_entropy_curve(golden, boxes, range(1, 11))
        assert curve.value_at(10) == pytest.approx(math.log(144) / 10)

    def test_full_shift(self, z2):
        """Test the full shift on three symbols gives ln 3."""
        curve = topological_entropy_curve(full_shift(z2, 3), folner_sequence("zd:2"), [2, 5])
        assert curve.value_at(5) == pytest.approx(math.log(3))

    def test_enumeration_off_intervals(self, golden, z1):
        """Test non-interval windows fall back to enumeration."""
        window = FiniteSubset(z1, [(0,), (1,), (3,)])
        assert admissible_count(golden, window, {}) == 6


class TestHamming:
    """Test Hamming-ball counts."""

    def test_ball_count(self):
        """Test L = 1 + 10 + 45 at n = 10, ε = 1/5, q = 2."""
        assert hamming_ball_count(10, Fraction(1, 5), 2) == 56

    def test_eta(self):
        """Test η for ε = 0.2 and q = 2."""
        assert eta_bound(0.2, 2) == pytest.approx(0.7004, abs=1e-4)

    def test_report(self):
        """Test the η bound holds at n = 10."""
        check = hamming_bound_report(10, Fraction(1, 5), 2)
        assert check.count == 56
        assert check.eta_bound_holds

    @pytest.mark.parametrize("epsilon, q", [(0, 2), (1, 2), (0.2, 1)])
    def test_invalid(self, epsilon, q):
        """Test ε outside (0, 1) or q < 2 is rejected."""
        with pytest.raises(ConfigurationError):
            hamming_ball_count(10, epsilon, q)


class TestEntropyCurve:
    """Test curve summaries."""

    def test_tail_window(self):
        """Test the tail window is the final third of the points."""
        points = [CurvePoint(n=n, size=n, value=float(n)) for n in range(1, 7)]
        curve = EntropyCurve.from_points("t", points)
        assert curve.tail_min == 5.0
        assert curve.tail_max == 6.0

    def test_duplicate_n(self):
        """Test duplicate indices are rejected."""
        points = [CurvePoint(n=1, size=1, value=0.0), CurvePoint(n=1, size=1, value=1.0)]
        with pytest.raises(ValueError):
            EntropyCurve.from_points("t", points)
