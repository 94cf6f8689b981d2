"""
Module including cli command fairness.
"""
from pathlib import Path
from typing import Optional

import click

from app.cli.common import execute, scenario_options, set_verbosity
from app.utils.rich_logging import log_manager


@click.command()
@scenario_options
@click.option('--mode', '-m', 'mode', type=click.Choice(['sigma', 'nfd', 'rho']), default=None,
              help="Swept parameter: FD/HD rate ratio, number of FD users or intensity.")
@log_manager.main_process
def fairness(config: Optional[Path], out: Optional[str], fmt: Optional[str],
             seed: Optional[int], quick: bool, workers: int, verbose: bool,
             mode: Optional[str]):
    """FD/HD and UL/DL fairness curves."""
    set_verbosity(verbose)
    execute('fairness', config, out, fmt, seed, quick, workers, fairness_mode=mode)
