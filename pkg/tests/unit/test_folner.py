"""Unit tests for Følner sequences, diagnostics and the subset text format."""

from fractions import Fraction

import pytest

from folnerkit.core.exceptions import ConfigurationError, PrefixExhaustedError
from folnerkit.groups.diagnostics import (
    folner_report,
    generator_ratios,
    growth_diagnostic,
    temperedness_constant,
)
from folnerkit.groups.folner import (
    BoxFolnerSequence,
    FolnerSequence,
    box_boundary_size,
    explicit_sequence,
    folner_sequence,
)
from folnerkit.groups.io import (
    dump_subset,
    format_pattern_rows,
    load_subset,
    parse_pattern_rows,
    parse_subset,
)
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import FiniteSubset, symmetric_difference_ratio


class TestBuiltinSequences:
    """Test the built-in Følner rules."""

    def test_box_sizes(self, z2):
        """Test closed-form sizes agree with the enumerated boxes."""
        seq = folner_sequence("zd:2")
        assert isinstance(seq, BoxFolnerSequence)
        assert seq.size(3) == 9
        assert len(seq.get(3)) == 9
        assert (2, 2) in seq.get(3)

    def test_box_invariance_closed_form(self):
        """Test the box boundary formula agrees with enumeration."""
        seq = folner_sequence("zd:1")
        closed = seq.invariance_ratio(6, 2)
        enumerated = FolnerSequence.invariance_ratio(seq, 6, 2)
        assert closed == enumerated == Fraction(4, 6)

    def test_box_boundary_size(self):
        """Test |B(A, K)| for a 4x4 box and a 3x3 window."""
        assert box_boundary_size([4, 4], [3, 3]) == 36 - 4

    def test_heisenberg_and_lamplighter_sizes(self):
        """Test the non-abelian shapes have the expected cardinalities."""
        assert folner_sequence("heis3").size(2) == 2 * 2 * 4
        assert folner_sequence("lamplighter").size(2) == 2 * 4

    def test_index_bounds(self):
        """Test index 0 and indices past the cap are refused."""
        seq = folner_sequence("zd:1", cap=3)
        with pytest.raises(PrefixExhaustedError):
            seq.get(0)
        with pytest.raises(PrefixExhaustedError):
            seq.get(4)
        assert len(seq.prefix(3)) == 3


class TestExplicitSequence:
    """Test user-supplied sequences."""

    def test_capped_at_length(self, z1, interval):
        """Test an explicit sequence stops after its last set."""
        seq = explicit_sequence(z1, [interval(0, 1), interval(0, 2)])
        assert seq.get(2) == interval(0, 2)
        with pytest.raises(PrefixExhaustedError):
            seq.get(3)

    def test_model_mismatch(self, z2, interval):
        """Test sets over another model are rejected."""
        with pytest.raises(ConfigurationError):
            explicit_sequence(z2, [interval(0, 2)])


class TestDiagnostics:
    """Test growth, ratio and temperedness diagnostics."""

    def test_temperedness_of_intervals(self, boxes):
        """Test the interval constant is (2n - 2) / n at its maximum."""
        report = temperedness_constant(boxes, 10)
        assert report.per_n[2] == 1.0
        assert report.constant == pytest.approx(1.8)
        assert "lower estimate" in report.label

    def test_temperedness_needs_two_sets(self, boxes):
        """Test n_max < 2 is rejected."""
        with pytest.raises(ConfigurationError):
            temperedness_constant(boxes, 1)

    def test_growth(self, boxes):
        """Test growth rows start at n = 2 and boxes grow monotonically."""
        rows, monotone = growth_diagnostic(boxes, 5)
        assert [r.n for r in rows] == [2, 3, 4, 5]
        assert monotone

    def test_growth_flags_stalls(self, z1, interval):
        """Test a repeated set breaks monotone growth."""
        seq = explicit_sequence(z1, [interval(0, 1), interval(0, 2), interval(0, 2)])
        _, monotone = growth_diagnostic(seq, 3)
        assert not monotone

    def test_generator_ratios(self):
        """Test exact ratios on a 4x4 box."""
        seq = folner_sequence("zd:2")
        (row,) = generator_ratios(seq, [4])
        assert row.exact["(1, 0)"] == "1/2"
        assert row.ratios["(0, -1)"] == 0.5

    def test_heisenberg_ratios_decrease(self):
        """Test the worst generator ratio on Heisenberg boxes decreases with n."""
        seq = folner_sequence("heis3")
        worst = [max(r.ratios.values()) for r in generator_ratios(seq, range(4, 9))]
        assert all(a > b for a, b in zip(worst, worst[1:]))
        assert worst[0] == pytest.approx(0.6406, abs=1e-3)

    def test_folner_report(self):
        """Test the combined report on Z²."""
        report = folner_report(folner_sequence("zd:2"), 6, tempered_n_max=4)
        assert report.n_max == 6
        assert len(report.ratios) == 6
        assert report.temperedness.n_max == 4
        assert report.monotone_growth

    @pytest.mark.parametrize(
        "model_id, n_max", [("zd:1", 6), ("zd:2", 4), ("heis3", 4), ("lamplighter", 3)]
    )
    def test_doubling_does_not_raise_ratios(self, model_id, n_max):
        """Test the worst generator ratio at 2n is at most the one at n."""
        seq = folner_sequence(model_id)
        gens = seq.model.generators()

        def worst(n):
            return max(symmetric_difference_ratio(seq.get(n), g) for g in gens)

        for n in range(1, n_max + 1):
            assert worst(2 * n) <= worst(n)

    def test_box_invariance_ratio_decreases(self, boxes):
        """Test |B(F_n, F_k F_k⁻¹)| / |F_n| at 2n is at most the value at n."""
        for k in (1, 2, 3):
            for n in range(1, 9):
                assert boxes.invariance_ratio(2 * n, k) <= boxes.invariance_ratio(n, k)


class TestSubsetText:
    """Test the line-oriented subset format."""

    def test_parse_skips_comments(self, z2):
        """Test comments and blank lines are ignored."""
        text = "# a square\n0,0\n\n1,0\n0,1\n1,1\n"
        subset = parse_subset(z2, text)
        assert len(subset) == 4

    def test_parse_rejects_garbage(self, z2):
        """Test non-integer rows raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            parse_subset(z2, "0,a\n")

    def test_parse_rejects_wrong_dimension(self, z2):
        """Test rows with the wrong coordinate count raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            parse_subset(z2, "0,0,0\n")

    def test_dump_and_load(self, z1, interval, tmp_path):
        """Test a subset survives a trip through a file."""
        path = tmp_path / "f.txt"
        dump_subset(interval(-2, 3), path)
        assert load_subset(z1, path) == interval(-2, 3)

    def test_pattern_rows(self, z1):
        """Test pattern rows parse and reject duplicate sites."""
        values = parse_pattern_rows(z1, "0,1\n1,0\n")
        assert values == {(0,): 1, (1,): 0}
        assert format_pattern_rows(z1, values) == "0,1\n1,0\n"
        with pytest.raises(ConfigurationError):
            parse_pattern_rows(z1, "0,1\n0,0\n")

    def test_lamplighter_rows(self):
        """Test lamplighter rows list the cursor then the lit lamps."""
        lamp = get_model("lamplighter")
        subset = parse_subset(lamp, "0\n1,0,2\n")
        assert subset == FiniteSubset(lamp, [(0, ()), (1, (0, 2))])
