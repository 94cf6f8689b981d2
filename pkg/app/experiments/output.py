"""
CSV and JSON emission of scenario outputs.
"""
import csv
import json
import logging
import os
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Literal, Optional, TextIO

from app.experiments.scenarios import ScenarioOutput
from app.experiments.spec import ScenarioSpec, spec_to_dict
from app.utils.errors import UnwritablePathError

OutputFormat = Literal['csv', 'json']

PACKAGE_NAME = 'hdfd-sched'
DL_TIE_BREAK = 'lowest user index among longest DL queues (uniform for hgms-r)'
SEED_DERIVATION = (
    'replication k seeds with splitmix64(master_seed ^ k); '
    'its SeedSequence spawns the arrival and decision streams'
)


def build_id() -> str:
    try:
        return f"{PACKAGE_NAME} {version(PACKAGE_NAME)}"
    except PackageNotFoundError:
        return f"{PACKAGE_NAME} (source tree)"


def _cell(value: Any) -> Any:
    return '' if value is None else value


def write_csv(output: ScenarioOutput, stream: TextIO):
    writer = csv.DictWriter(stream, fieldnames=list(output.columns), lineterminator='\n')
    writer.writeheader()
    for row in output.rows:
        writer.writerow({k: _cell(row.get(k)) for k in output.columns})


def summary(output: ScenarioOutput, spec: ScenarioSpec) -> dict[str, Any]:
    """
    The JSON summary: the full config, replay metadata and the rows.

    The ``config`` object alone reloads into the same spec via
    ``load_config``.
    """
    return {
        'config': spec_to_dict(spec),
        'metadata': {
            'scenario': output.scenario,
            'master_seed': spec.master_seed,
            'grids': {
                'rhos': list(spec.rhos),
                'sigmas': list(spec.sigmas),
                'n_fds': list(spec.n_fds),
            },
            'build': build_id(),
            'dl_tie_break': DL_TIE_BREAK,
            'seed_derivation': SEED_DERIVATION,
            **output.metadata,
        },
        'columns': list(output.columns),
        'rows': [{k: row.get(k) for k in output.columns} for row in output.rows],
    }


def emit(output: ScenarioOutput,
         spec: ScenarioSpec,
         fmt: OutputFormat = 'csv',
         path: Optional[Path | str] = None):
    """
    Write ``output`` as CSV or as a JSON summary.

    Args:
        output (ScenarioOutput): Rows to write.
        spec (ScenarioSpec): The scenario that produced them.
        fmt (OutputFormat): 'csv' or 'json'.
        path (Optional[Path | str]): Target file; None or '-' for stdout.

    Raises:
        UnwritablePathError: If the target cannot be written.
    """
    def write(stream: TextIO):
        if fmt == 'json':
            json.dump(summary(output, spec), stream, indent=2)
            stream.write('\n')
        else:
            write_csv(output, stream)

    if path is None or str(path) == '-':
        write(sys.stdout)
        return

    path = Path(path)
    try:
        with path.open('w', encoding='utf-8', newline='') as f:
            write(f)
    except OSError as e:
        raise UnwritablePathError(f"cannot write {path}: {e}") from None
    logging.getLogger('Main').info("Wrote %d rows to %s", len(output.rows), path)


def check_writable(path: Optional[Path | str]):
    """
    Fail early if ``emit`` would not be able to write ``path``.

    Raises:
        UnwritablePathError: If ``path`` is a directory, or neither it nor a
            new file in its directory can be written.
    """
    if path is None or str(path) == '-':
        return
    path = Path(path)
    if path.is_dir():
        raise UnwritablePathError(f"cannot write {path}: is a directory")
    if path.exists():
        writable = os.access(path, os.W_OK)
    else:
        writable = path.parent.is_dir() and os.access(path.parent, os.W_OK)
    if not writable:
        raise UnwritablePathError(f"cannot write {path}")
