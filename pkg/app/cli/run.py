"""
Module including cli command run.
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
@click.option('--rho', 'rho', type=float, default=None)
@click.option('--sigma', 'sigma', type=float, default=None)
@click.option('--n-fd', 'n_fd', type=int, default=None)
@log_manager.main_process
def run(config: Optional[Path], out: Optional[str], fmt: Optional[str],
        seed: Optional[int], quick: bool, workers: int, verbose: bool,
        schedulers: tuple[str, ...], rho: Optional[float], sigma: Optional[float],
        n_fd: Optional[int]):
    """Run the scenario named in the config file, 'custom' by default."""
    set_verbosity(verbose)
    execute(None, config, out, fmt, seed, quick, workers,
            schedulers=schedulers or None, rho=rho, sigma=sigma, n_fd=n_fd)
