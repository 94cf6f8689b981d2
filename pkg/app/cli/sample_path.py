"""
Module including cli command sample-path.
"""
from pathlib import Path
from typing import Optional

import click

from app.cli.common import execute, scenario_options, set_verbosity
from app.utils.rich_logging import log_manager


@click.command()
@scenario_options
@click.option('--rho', 'rho', type=float, default=None, help="Traffic intensity.")
@click.option('--stride', 'sample_stride', type=int, default=None,
              help="Record the average queue every this many slots.")
@log_manager.main_process
def sample_path(config: Optional[Path], out: Optional[str], fmt: Optional[str],
                seed: Optional[int], quick: bool, workers: int, verbose: bool,
                rho: Optional[float], sample_stride: Optional[int]):
    """Average queue trajectory of one replication per scheduler."""
    set_verbosity(verbose)
    execute('sample-path', config, out, fmt, seed, quick, workers,
            rho=rho, sample_stride=sample_stride)
