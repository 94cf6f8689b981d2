"""
Options and the execution path shared by every scenario command.
"""
import os
import sys
import logging
from pathlib import Path
from typing import Optional

import click

from app.experiments import (
    ScenarioOutput, ScenarioSpec, apply_overrides, check_writable, emit, load_config,
    run_scenario, spec_from_dict
)
from app.utils.errors import SchedError
from app.utils.rich_logging import log_manager

DEFAULT_WORKERS = max((os.cpu_count() or 1) - 2, 1)


def scenario_options(func):
    """Attach --config, --out, --format, --seed, --quick, --workers and --verbose."""
    options = [
        click.option('--config', '-c', 'config',
                     type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     help="JSON config file, or a JSON summary emitted earlier."),
        click.option('--out', '-o', 'out', type=str, default=None,
                     help="Output file; '-' or omitted writes to stdout."),
        click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default=None),
        click.option('--seed', 'seed', type=int, default=None, help="Master seed."),
        click.option('--quick', 'quick', is_flag=True, default=False,
                     help="Shorter horizon and fewer replications."),
        click.option('--workers', '-j', 'workers', type=int, default=DEFAULT_WORKERS),
        click.option('--verbose', '-v', 'verbose', is_flag=True, default=False),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_spec(scenario: Optional[str],
               config: Optional[Path],
               out: Optional[str],
               fmt: Optional[str],
               seed: Optional[int],
               quick: bool,
               **overrides) -> ScenarioSpec:
    """Config file (or scenario defaults) with the command-line flags on top."""
    if config is not None:
        spec = load_config(config, scenario)
    else:
        spec = spec_from_dict({}, scenario)
    return apply_overrides(spec, quick=quick, out=out, format=fmt, master_seed=seed, **overrides)


def execute(scenario: Optional[str],
            config: Optional[Path],
            out: Optional[str],
            fmt: Optional[str],
            seed: Optional[int],
            quick: bool,
            workers: int,
            **overrides) -> ScenarioOutput:
    """
    Build the scenario spec, run it and emit its rows.

    Exits with the error's exit code on configuration and input errors.
    """
    logger = logging.getLogger('Main')
    try:
        spec = build_spec(scenario, config, out, fmt, seed, quick, **overrides)
        logger.info(
            "Scenario '%s': N=%d, N_F=%d, horizon=%d, %d replications, seed %d",
            spec.scenario, spec.n_users, spec.n_fd, spec.horizon, spec.replications,
            spec.master_seed,
        )
        check_writable(spec.out)
        output = run_scenario(spec, workers)
        emit(output, spec, spec.format, spec.out)
    except SchedError as e:
        logger.error("%s: %s", type(e).__name__, e)
        sys.exit(e.exit_code)
    return output


def set_verbosity(verbose: bool):
    level = logging.DEBUG if verbose else logging.INFO
    log_manager.set_level(level)
    logging.getLogger().setLevel(level)
