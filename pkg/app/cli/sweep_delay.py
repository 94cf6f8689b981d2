"""
Module including cli command sweep-delay.
"""
from pathlib import Path
from typing import Optional

import click

from app.cli.common import execute, scenario_options, set_verbosity
from app.utils.rich_logging import log_manager


@click.command()
@scenario_options
@click.option('--scheduler', '-s', 'schedulers', multiple=True,
              type=click.Choice(['mws', 'gms', 'qcsma', 'hgms-r', 'hgms', 'hgms-e']))
@click.option('--weight', '-f', 'weights', multiple=True,
              type=click.Choice(['half-log', 'log1p', 'sqrt', 'linear']))
@log_manager.main_process
def sweep_delay(config: Optional[Path], out: Optional[str], fmt: Optional[str],
                seed: Optional[int], quick: bool, workers: int, verbose: bool,
                schedulers: tuple[str, ...], weights: tuple[str, ...]):
    """Average queue length over the traffic-intensity grid, with both lower bounds."""
    set_verbosity(verbose)
    execute('delay-sweep', config, out, fmt, seed, quick, workers,
            schedulers=schedulers or None, weights=weights or None)
