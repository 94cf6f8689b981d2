"""
Module including cli command bounds.
"""
from pathlib import Path
from typing import Optional

import click

from app.cli.common import execute, scenario_options, set_verbosity
from app.utils.rich_logging import log_manager


@click.command()
@scenario_options
@click.option('--loose', 'loose', is_flag=True, default=False,
              help="Also emit the alpha_max = 1 bound, valid for H-GMS-E.")
@log_manager.main_process
def bounds(config: Optional[Path], out: Optional[str], fmt: Optional[str],
           seed: Optional[int], quick: bool, workers: int, verbose: bool,
           loose: bool):
    """Fundamental and H-GMS lower bounds over the traffic-intensity grid."""
    set_verbosity(verbose)
    execute('bounds-curve', config, out, fmt, seed, quick, workers, loose_bound=loose or None)
