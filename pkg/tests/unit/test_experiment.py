"""Unit tests for config loading and the experiment runner."""

import csv
import json
from pathlib import Path

import pytest

from folnerkit.core.exceptions import ConfigurationError
from folnerkit.services.experiment_service import ExperimentService, build_config, load_config

EXAMPLES = Path(__file__).resolve().parents[2] / "docs" / "examples"


def run(data, tmp_path, name="out"):
    config = build_config(data)
    return ExperimentService(config, base_dir=tmp_path).run(tmp_path / name)


class TestConfig:
    """Test experiment config loading."""

    def test_unknown_key(self):
        """Test unknown keys are rejected."""
        with pytest.raises(ConfigurationError, match="invalid experiment config"):
            build_config({"operation": "ldp", "params": {"threshold": 0.7}})

    def test_samples_need_seed(self):
        """Test Monte Carlo settings without a seed fail validation."""
        with pytest.raises(ConfigurationError, match="seed"):
            build_config({"operation": "ldp", "samples": 100})

    def test_range_and_explicit_sets(self):
        """Test the n range and explicit sequences are validated."""
        with pytest.raises(ConfigurationError):
            build_config({"params": {"n_min": 5, "n_max": 2}})
        with pytest.raises(ConfigurationError):
            build_config({"group": {"folner": "explicit"}})

    def test_overrides(self):
        """Test non-None overrides replace top-level keys."""
        config = build_config({"operation": "ldp", "seed": 1}, {"seed": 7, "level": None})
        assert config.seed == 7
        assert config.level == "quick"

    def test_dotted_keys(self, tmp_path):
        """Test TOML dotted keys populate the nested sections."""
        path = tmp_path / "exp.toml"
        path.write_text('operation = "ldp"\ngroup.model = "zd:2"\nparams.c = 0.6\n')
        config = load_config(path)
        assert config.group.model == "zd:2"
        assert config.params.c == 0.6

    def test_unreadable_files(self, tmp_path):
        """Test missing files and TOML syntax errors become configuration errors."""
        with pytest.raises(ConfigurationError, match="cannot read"):
            load_config(tmp_path / "missing.toml")
        broken = tmp_path / "broken.toml"
        broken.write_text("operation = \n")
        with pytest.raises(ConfigurationError):
            load_config(broken)

    def test_hash_is_stable(self):
        """Test equal configs hash equally and different ones do not."""
        a = build_config({"operation": "ldp"})
        b = build_config({"operation": "ldp"})
        c = build_config({"operation": "ldp", "params": {"c": 0.8}})
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != c.config_hash()

    @pytest.mark.parametrize("path", sorted(EXAMPLES.glob("*.toml")), ids=lambda p: p.stem)
    def test_shipped_examples_validate(self, path):
        """Test every example config under docs/ loads."""
        config = load_config(path)
        assert config.operation == path.stem


class TestExperimentService:
    """Test each operation end to end."""

    def test_folner(self, tmp_path):
        """Test the Z² ratio table in curves.csv."""
        result = run(
            {
                "operation": "folner",
                "group": {"model": "zd:2"},
                "params": {"n_max": 6, "tempered_n_max": 4},
            },
            tmp_path,
        )
        assert result.passed
        with open(result.curves_path, newline="") as f:
            rows = list(csv.reader(f))
        header = rows[0]
        assert header[:2] == ["n", "size"]
        assert "(1, 0)" in header
        at_four = rows[4]
        assert at_four[0] == "4"
        assert at_four[header.index("(1, 0)")] == "0.5"
        payload = json.loads(result.report_path.read_text())
        assert payload["result"]["temperedness"]["n_max"] == 4

    def test_ldp_reports_are_reproducible(self, tmp_path):
        """Test two identical runs write identical report bytes."""
        data = {
            "operation": "ldp",
            "params": {"c": 0.7, "n_min": 1, "n_max": 10},
        }
        first = run(data, tmp_path, "one")
        second = run(data, tmp_path, "two")
        assert first.report_path.read_bytes() == second.report_path.read_bytes()
        payload = json.loads(first.report_path.read_text())
        assert payload["operation"] == "ldp"
        assert payload["passed"] is True
        assert payload["result"]["points"][-1]["strict_exact"] == "7/128"

    def test_tile_with_target(self, tmp_path):
        """Test quasi-tiling F_100 with F_10 covers it."""
        result = run(
            {
                "operation": "tile",
                "params": {"epsilon": 0.05, "tile_indices": [10], "target_n": 100},
            },
            tmp_path,
        )
        assert result.passed
        tiling = result.record["tiling"]
        assert tiling["certificate"]["coverage"] == 1.0
        assert tiling["target"] == "F_100"
        assert result.rows == [[1, 10, 10]]

    def test_tile_selection_only(self, tmp_path):
        """Test explicit indices without a target list the shapes."""
        result = run({"operation": "tile", "params": {"tile_indices": [2, 5]}}, tmp_path)
        assert result.rows == [[1, 2, 2], [2, 5, 5]]
        assert result.record["tiling"] is None

    def test_entropy_katok(self, tmp_path):
        """Test the Katok curve has one row per n."""
        result = run(
            {"operation": "entropy", "params": {"kind": "katok", "n_min": 1, "n_max": 4}},
            tmp_path,
        )
        assert [row[0] for row in result.rows] == [1, 2, 3, 4]

    def test_entropy_smb_needs_seed(self, tmp_path):
        """Test SMB traces refuse to run unseeded."""
        with pytest.raises(ConfigurationError, match="seed"):
            run({"operation": "entropy", "params": {"kind": "smb"}}, tmp_path)

    def test_entropy_smb_fair_coin(self, tmp_path):
        """Test every SMB value for the fair coin is ln 2."""
        result = run(
            {"operation": "entropy", "seed": 3, "params": {"kind": "smb", "n_max": 5}},
            tmp_path,
        )
        for row in result.rows:
            assert row[2] == pytest.approx(0.6931471805599453)

    def test_entropy_topological(self, tmp_path):
        """Test the golden-mean shift from a forbidden-pattern config."""
        result = run(
            {
                "operation": "entropy",
                "system": {"alphabet": 2, "forbidden": [[[0, 1], [1, 1]]], "safe_symbol": 0},
                "params": {"kind": "topological", "n_min": 1, "n_max": 4},
            },
            tmp_path,
        )
        assert result.rows[0][2] == pytest.approx(0.6931471805599453)
        assert result.rows[-1][2] < 0.6931471805599453

    def test_thm3demo_quick(self, tmp_path):
        """Test the construction on F_10 from a config."""
        result = run(
            {
                "operation": "thm3demo",
                "seed": 20240601,
                "measure": {"family": [[0.5, 0.5]]},
                "params": {"c": 0.4, "n": 10, "tile_indices": [5]},
            },
            tmp_path,
        )
        assert result.passed
        assert result.record.q_real == 4

    def test_thm3demo_construction_params(self, tmp_path):
        """Test params.separation_radius and params.tol reach the construction."""
        base = {"operation": "thm3demo", "seed": 1, "measure": {"family": [[0.5, 0.5]]}}
        params = {"c": 0.4, "n": 10, "tile_indices": [5], "epsilon": 0.25}
        with pytest.raises(ConfigurationError, match="Bowen radius"):
            run({**base, "params": {**params, "separation_radius": 1}}, tmp_path)
        with pytest.raises(ConfigurationError, match="partition tolerance"):
            run({**base, "params": {**params, "tol": 1.5}}, tmp_path)

    def test_thm3demo_needs_tiles(self, tmp_path):
        """Test the construction refuses to run without tile indices."""
        with pytest.raises(ConfigurationError, match="tile_indices"):
            run({"operation": "thm3demo", "seed": 1}, tmp_path)

    def test_explicit_sequence_from_files(self, tmp_path):
        """Test group.sets files are read relative to the config directory."""
        for n in (1, 2, 3):
            body = "".join(f"{i}\n" for i in range(n))
            (tmp_path / f"f{n}.txt").write_text("# interval\n" + body)
        result = run(
            {
                "operation": "folner",
                "group": {"folner": "explicit", "sets": ["f1.txt", "f2.txt", "f3.txt"]},
                "params": {"n_max": 3},
            },
            tmp_path,
        )
        assert [row[1] for row in result.rows] == [1, 2, 3]

    def test_verify(self, tmp_path):
        """Test a mutated suite run does not pass."""
        result = run({"operation": "verify", "mutation": "drop-center"}, tmp_path)
        assert not result.passed
        assert result.record.failed_families() == ["tiling"]
