"""Command-line interface for folnerkit."""

import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
from rich.console import Console
from rich.table import Table

from folnerkit.version import VERSION

console = Console()

# Rows shown in the terminal summary; curves.csv always has all of them
SUMMARY_ROWS = 25


def _display_table(title: str, header: List[str], rows: List[List[Any]]) -> None:
    table = Table(title=title)
    for name in header:
        table.add_column(str(name))
    for row in rows[:SUMMARY_ROWS]:
        table.add_row(*[_cell(v) for v in row])
    console.print(table)
    if len(rows) > SUMMARY_ROWS:
        console.print(f"[dim]... {len(rows) - SUMMARY_ROWS} more rows in curves.csv[/dim]")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "[green]✓[/green]" if value else "[red]✗[/red]"
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)


def _execute(
    operation: Optional[str],
    config_path: Optional[str],
    overrides: Dict[str, Any],
    out: str,
) -> None:
    """Load the config, run it and map the outcome onto the exit status."""
    from folnerkit.core.config import settings
    from folnerkit.core.exceptions import FolnerKitError
    from folnerkit.core.logging import configure_logging
    from folnerkit.services.experiment_service import (
        ExperimentService,
        build_config,
        load_config,
    )
    from folnerkit.services.report_service import ReportService

    configure_logging(settings.run.log_level, settings.run.log_json)
    if operation is not None:
        overrides = {**overrides, "operation": operation}
    config_hash = ""
    try:
        if config_path is not None:
            config = load_config(config_path, overrides)
            base_dir: Optional[Path] = Path(config_path).parent
        else:
            config = build_config({}, overrides)
            base_dir = None
        config_hash = config.config_hash()
        result = ExperimentService(config, base_dir=base_dir).run(out)
    except FolnerKitError as e:
        path = ReportService(out, config_hash).write_failure(operation or "run", e)
        console.print(f"[red]✗ {e.__class__.__name__}: {e}[/red]")
        console.print(f"[dim]failure record: {path}[/dim]")
        sys.exit(e.exit_code)

    _display_table(result.operation, result.header, result.rows)
    console.print(f"[dim]report: {result.report_path}[/dim]")
    if not result.passed:
        console.print("[red]✗ certificate check failed[/red]")
        sys.exit(3)
    console.print("[green]✓ all certificates passed[/green]")


def common_options(fn: Callable[..., None]) -> Callable[..., None]:
    """--config, --seed and --out, shared by every operation."""
    fn = click.option("--out", default="out", show_default=True, help="Output directory")(fn)
    fn = click.option("--seed", type=int, default=None, help="Root seed for sampling")(fn)
    fn = click.option(
        "--config", "config_path", type=click.Path(), default=None, help="Experiment TOML file"
    )(fn)
    return fn


@click.group()
@click.version_option(version=VERSION)
def cli() -> None:
    """folnerkit - Følner sets, quasi-tilings and large deviations for amenable group actions."""
    pass


@cli.command()
@common_options
def run(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Run whatever operation the config file names."""
    if config_path is None:
        raise click.UsageError("run needs --config")
    _execute(None, config_path, {"seed": seed}, out)


@cli.command()
@common_options
def folner(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Boundary ratios and temperedness of a Følner sequence."""
    _execute("folner", config_path, {"seed": seed}, out)


@cli.command()
@common_options
def tile(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Select tile shapes and quasi-tile a target Følner set."""
    _execute("tile", config_path, {"seed": seed}, out)


@cli.command()
@common_options
def entropy(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Katok, SMB, topological or partition entropy curves."""
    _execute("entropy", config_path, {"seed": seed}, out)


@cli.command()
@common_options
def ldp(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Tail exponents of Birkhoff averages against the variational bounds."""
    _execute("ldp", config_path, {"seed": seed}, out)


@cli.command()
@common_options
def thm3demo(config_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Run the lower-bound construction end to end on one Følner set."""
    _execute("thm3demo", config_path, {"seed": seed}, out)


@cli.command()
@common_options
@click.option(
    "--level",
    type=click.Choice(["quick", "full"]),
    default=None,
    help="Suite size (default quick)",
)
@click.option(
    "--mutation",
    type=click.Choice(["coverage-off-by-one", "drop-center"]),
    default=None,
    help="Inject a known fault into the tiling checks",
)
def verify(
    config_path: Optional[str],
    seed: Optional[int],
    out: str,
    level: Optional[str],
    mutation: Optional[str],
) -> None:
    """Cross-module invariant suite."""
    _execute("verify", config_path, {"seed": seed, "level": level, "mutation": mutation}, out)


@cli.group()
def config() -> None:
    """Configuration management."""
    pass


@config.command()
def show() -> None:
    """Show budgets, solver tolerances and runner settings."""
    from folnerkit.core.config import settings

    table = Table(title="folnerkit settings")
    table.add_column("Section", style="cyan")
    table.add_column("Key")
    table.add_column("Value", style="green")
    for section in ("budget", "solver", "run"):
        values = getattr(settings, section).model_dump()
        for key, value in values.items():
            table.add_row(section, key, str(value))
    console.print(table)


if __name__ == "__main__":
    cli()
