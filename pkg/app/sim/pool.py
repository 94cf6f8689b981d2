"""
Worker pool fanning (config, replication) tasks out to processes.
"""
import logging
from multiprocessing import Process, Queue
from typing import Sequence

from rich.console import Console
from rich.progress import (
    Progress, TextColumn, BarColumn, TimeRemainingColumn, TimeElapsedColumn,
    MofNCompleteColumn
)

from app.sim.engine import ReplicatedResult, SimConfig, SimResult, aggregate, run_once
from app.sim.streams import derive_seed
from app.utils.rich_logging import log_manager


def _progress() -> Progress:
    return Progress(
        TextColumn("[progress.description]{task.description}"),
        TextColumn("[progress.percentage]{task.percentage:>5.1f}%"),
        BarColumn(bar_width=None),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        TimeRemainingColumn(),
        transient=True,
        expand=True,
        console=Console(stderr=True),
    )


@log_manager.sub_process
def _worker_process(worker_id: int,
                    configs: Sequence[SimConfig],
                    task_queue: Queue,
                    report_queue: Queue):
    logger = logging.getLogger(f'Worker-{worker_id}')
    logger.debug("Launched.")

    while True:
        task = task_queue.get()
        if task is None:
            report_queue.put(None)
            logger.debug("Finished.")
            return
        cell, rep = task
        sc = configs[cell]
        try:
            with log_manager.replication(cell, rep, sc.scheduler.label):
                result = run_once(sc, derive_seed(sc.master_seed, rep))
            report_queue.put((cell, rep, result))
        except Exception as e:
            logger.exception("Error simulating cell %d, replication %d", cell, rep)
            report_queue.put((cell, rep, repr(e)))


def run_grid(configs: Sequence[SimConfig],
             num_workers: int = 1,
             show_progress: bool = True) -> list[ReplicatedResult]:
    """
    Run every replication of every config and aggregate per config.

    Results are sorted by (config, replication) before aggregation, so the
    output does not depend on the number of workers.

    Args:
        configs (Sequence[SimConfig]): Grid cells.
        num_workers (int): Worker processes; 1 or less runs in-process.
        show_progress (bool): Display a progress bar.

    Returns:
        list[ReplicatedResult]: One aggregate per config, in input order.

    Raises:
        RuntimeError: If any replication failed.
    """
    logger = logging.getLogger('Main')
    tasks = [(cell, rep) for cell, sc in enumerate(configs) for rep in range(sc.replications)]
    results: dict[tuple[int, int], SimResult] = {}
    failures: list[str] = []

    with _progress() as progress:
        task_id = progress.add_task("Simulating...", total=len(tasks), visible=show_progress)

        if num_workers <= 1:
            for cell, rep in tasks:
                sc = configs[cell]
                with log_manager.replication(cell, rep, sc.scheduler.label):
                    results[cell, rep] = run_once(sc, derive_seed(sc.master_seed, rep))
                progress.advance(task_id, 1)
        else:
            num_workers = min(num_workers, len(tasks)) or 1
            logger.info("Using %d workers for %d tasks.", num_workers, len(tasks))
            task_queue = Queue()
            report_queue = Queue()
            for task in tasks:
                task_queue.put(task)
            for _ in range(num_workers):
                task_queue.put(None)

            processes = [
                Process(
                    target=_worker_process,
                    args=(i, list(configs), task_queue, report_queue)
                )
                for i in range(num_workers)
            ]
            for process in processes:
                process.start()

            finished_count = 0
            while finished_count < num_workers:
                report = report_queue.get()
                if report is None:
                    finished_count += 1
                    continue
                cell, rep, payload = report
                if isinstance(payload, str):
                    failures.append(f"cell {cell} replication {rep}: {payload}")
                else:
                    results[cell, rep] = payload
                progress.advance(task_id, 1)

            for process in processes:
                process.join()

    if failures:
        raise RuntimeError("Simulation failed: " + "; ".join(failures))

    return [
        aggregate(sc, [results[cell, rep] for rep in range(sc.replications)])
        for cell, sc in enumerate(configs)
    ]
