"""
Rich console logging shared by the CLI process and the simulation workers.

Every process logs into one multiprocessing queue; the CLI process renders
the queue through a single RichHandler on stderr, so stdout stays free for
CSV/JSON rows. Records emitted while a replication is being simulated carry
its grid cell, replication number and scheduler.
"""
import contextlib
import functools
import logging
from contextvars import ContextVar
from logging.handlers import QueueHandler, QueueListener
from multiprocessing import Queue
from typing import Iterator

from rich.console import Console, Group
from rich.logging import RichHandler
from rich.traceback import Traceback, install

install()

LOG_FORMAT = "[bold cyan]\\[%(name)s][/]%(replication)s %(message)s"

_replication: ContextVar[str] = ContextVar('replication', default='')


def replication_tag(cell: int, rep: int, label: str) -> str:
    """Markup prepended to messages logged while simulating one replication."""
    return f" [dim]({label} cell {cell} rep {rep})[/]"


class ReplicationFilter(logging.Filter):
    """Stamps ``record.replication`` with the replication being simulated, if any."""
    def filter(self, record: logging.LogRecord) -> bool:
        record.replication = _replication.get()
        return True


class _ConsoleHandler(RichHandler):
    def render_message(self, record: logging.LogRecord, message):
        if traceback := getattr(record, 'rich_traceback', None):
            return Group(message, traceback)
        return super().render_message(record, message)


class _WorkerQueueHandler(QueueHandler):
    """Formats records before they cross the process boundary, exceptions included."""
    def __init__(self, queue: Queue, rich_tracebacks: bool, **handler_kwargs) -> None:
        super().__init__(queue)
        self.rich_tracebacks = rich_tracebacks
        self.traceback_kwargs = {
            k.removeprefix('tracebacks_'): v
            for k, v in handler_kwargs.items()
            if k.startswith('tracebacks_')
        }
        self.addFilter(ReplicationFilter())

    def prepare(self, record: logging.LogRecord) -> logging.LogRecord:
        if self.rich_tracebacks and record.exc_info and record.exc_info[0] is not None:
            exc_type, exc_value, exc_traceback = record.exc_info
            assert exc_value is not None
            record.rich_traceback = Traceback.from_exception(
                exc_type, exc_value, exc_traceback, **self.traceback_kwargs
            )
            record.exc_info = None
            record.exc_text = None
            record.stack_info = None
        record.msg = self.format(record)
        record.args = None
        return record


class RichLogManager:
    """
    Routes the logging of the CLI process and of the worker processes through
    one queue rendered by the CLI process.

    Decorate the CLI entry point with ``main_process`` and the worker target
    with ``sub_process``; wrap each simulated replication in ``replication``.
    """
    def __init__(self, level: str | int, **handler_kwargs):
        self._queue = Queue()
        self._level = level
        handler_kwargs.setdefault('log_time_format', "[%X]")
        handler_kwargs.setdefault('markup', True)
        handler_kwargs.setdefault('omit_repeated_times', False)
        handler_kwargs.setdefault('show_path', False)
        handler_kwargs.setdefault('rich_tracebacks', True)
        handler_kwargs.setdefault('console', Console(stderr=True))
        self._handler_kwargs = handler_kwargs

    def _configure(self):
        logging.basicConfig(
            level=self._level,
            format=LOG_FORMAT,
            handlers=[_WorkerQueueHandler(self._queue, **self._handler_kwargs)],
            force=True,
        )

    def set_level(self, level: str | int):
        """Change the level used by subsequently configured processes."""
        self._level = level

    @contextlib.contextmanager
    def replication(self, cell: int, rep: int, label: str) -> Iterator[None]:
        """Tag records logged inside the block with one replication of a grid."""
        token = _replication.set(replication_tag(cell, rep, label))
        try:
            yield
        finally:
            _replication.reset(token)

    def main_process(self, func):
        """Decorator for the CLI entry point: starts the rendering listener."""
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            self._configure()
            listener = QueueListener(self._queue, _ConsoleHandler(**self._handler_kwargs))
            listener.start()
            try:
                return func(*args, **kwargs)
            finally:
                listener.stop()
        return wrapper

    def sub_process(self, func):
        """Decorator for a worker process target."""
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            self._configure()
            return func(*args, **kwargs)
        return wrapper


log_manager = RichLogManager(level=logging.INFO)
