"""Tests for the command-line interface."""

import json

import pytest
from click.testing import CliRunner

from folnerkit.cli.main import cli
from folnerkit.version import VERSION


@pytest.fixture
def runner():
    return CliRunner()


def write_config(tmp_path, text):
    path = tmp_path / "exp.toml"
    path.write_text(text)
    return str(path)


class TestCli:
    """Test subcommands, output files and exit codes."""

    def test_version(self, runner):
        """Test --version prints the package version."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert VERSION in result.output

    def test_folner(self, runner, tmp_path):
        """Test the folner subcommand writes both output files."""
        config = write_config(tmp_path, 'group.model = "zd:2"\nparams.n_max = 5\n')
        out = tmp_path / "out"
        result = runner.invoke(cli, ["folner", "--config", config, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "curves.csv").exists()
        assert json.loads((out / "report.json").read_text())["operation"] == "folner"

    def test_ldp_bounds(self, runner, tmp_path):
        """Test the fair-coin rate bounds land in report.json."""
        config = write_config(tmp_path, "params.c = 0.7\nparams.n_max = 10\n")
        out = tmp_path / "out"
        result = runner.invoke(cli, ["ldp", "--config", config, "--out", str(out)])
        assert result.exit_code == 0, result.output
        bounds = json.loads((out / "report.json").read_text())["result"]["bounds"]
        assert bounds["thm1_lower"] == pytest.approx(-0.0822829, abs=1e-6)

    def test_configuration_error_exit(self, runner, tmp_path):
        """Test sampling without a seed exits 2 with a failure record."""
        config = write_config(tmp_path, "samples = 100\n")
        out = tmp_path / "out"
        result = runner.invoke(cli, ["ldp", "--config", config, "--out", str(out)])
        assert result.exit_code == 2
        failure = json.loads((out / "failure.json").read_text())
        assert failure["operation"] == "ldp"
        assert failure["result"]["error"] == "ConfigurationError"
        assert failure["result"]["exit_code"] == 2

    def test_seed_option_overrides(self, runner, tmp_path):
        """Test --seed satisfies the sampling requirement."""
        config = write_config(
            tmp_path, 'samples = 200\nparams.n_min = 4\nparams.n_max = 4\n'
        )
        out = tmp_path / "out"
        result = runner.invoke(
            cli, ["ldp", "--config", config, "--seed", "5", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        point = json.loads((out / "report.json").read_text())["result"]["points"][0]
        assert point["method"] == "exact"

    def test_verify_quick(self, runner, tmp_path):
        """Test the quick suite exits cleanly."""
        result = runner.invoke(cli, ["verify", "--out", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output

    def test_verify_mutation_fails(self, runner, tmp_path):
        """Test a seeded fault makes verify exit 3."""
        out = tmp_path / "out"
        result = runner.invoke(
            cli, ["verify", "--mutation", "coverage-off-by-one", "--out", str(out)]
        )
        assert result.exit_code == 3
        payload = json.loads((out / "report.json").read_text())
        assert payload["passed"] is False

    def test_run_needs_config(self, runner):
        """Test run without --config is a usage error."""
        result = runner.invoke(cli, ["run"])
        assert result.exit_code == 2
        assert "--config" in result.output

    def test_run_dispatches_on_operation(self, runner, tmp_path):
        """Test run executes the operation named in the file."""
        config = write_config(tmp_path, 'operation = "tile"\nparams.tile_indices = [3]\n')
        out = tmp_path / "out"
        result = runner.invoke(cli, ["run", "--config", config, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert json.loads((out / "report.json").read_text())["operation"] == "tile"

    def test_config_show(self, runner):
        """Test config show lists the budgets."""
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert "max_patterns" in result.output
