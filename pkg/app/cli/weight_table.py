"""
Module including cli command weight-table.
"""
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from app.cli.common import execute, scenario_options, set_verbosity
from app.experiments import ScenarioOutput
from app.utils.rich_logging import log_manager


def _render(output: ScenarioOutput) -> Table:
    table = Table(title="Q-CSMA average queue over H-GMS variants")
    for header in ('f', 'rho', 'H-GMS-R', 'H-GMS', 'H-GMS-E'):
        table.add_column(header, justify='right')
    cells: dict[tuple[str, float], dict[str, str]] = {}
    for row in output.rows:
        ratio = row['ratio']
        cells.setdefault((row['weight'], row['rho']), {})[row['scheduler']] = (
            '-' if ratio is None else f"{ratio:.2f}"
        )
    for (weight, rho), ratios in cells.items():
        table.add_row(weight, f"{rho:g}", *(ratios.get(k, '-') for k in ('H-GMS-R', 'H-GMS', 'H-GMS-E')))
    return table


@click.command()
@scenario_options
@click.option('--weight', '-f', 'weights', multiple=True,
              type=click.Choice(['half-log', 'log1p', 'sqrt', 'linear']))
@log_manager.main_process
def weight_table(config: Optional[Path], out: Optional[str], fmt: Optional[str],
                 seed: Optional[int], quick: bool, workers: int, verbose: bool,
                 weights: tuple[str, ...]):
    """Delay ratio of Q-CSMA to each H-GMS variant per weight function."""
    set_verbosity(verbose)
    output = execute('weight-table', config, out, fmt, seed, quick, workers,
                     weights=weights or None)
    Console(stderr=True).print(_render(output))
