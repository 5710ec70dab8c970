import logging
import threading
import time
from functools import wraps
from typing import TYPE_CHECKING, Any, Optional

TRACE = logging.DEBUG - 5

if TYPE_CHECKING:

    class Logger(logging.Logger):
        def trace(self, msg: Any, *args: Any, **kwargs: Any) -> None: ...

else:
    Logger = logging.Logger


def get_logger(name: Optional[str] = None) -> Logger:
    return logging.getLogger(name)  # type: ignore


_indent = threading.local()


def get_indent():
    return getattr(_indent, "level", 0)


def _shift_indent(step: int):
    _indent.level = max(0, get_indent() + step)


class LogSection:
    """Brackets a block of work in the log.

    Logs the title on entry and the elapsed wall time on exit, indenting
    everything logged in between. Works as a context manager or a decorator.
    """

    def __init__(self, title: str, level: Optional[int] = None, logger_name: Optional[str] = None):
        self.title = title
        self.level = TRACE if level is None else level
        self.logger = logging.getLogger(logger_name or __name__)
        self._started = threading.local()

    def __enter__(self):
        self.logger.log(self.level, "%s ...", self.title)
        self._started.at = time.perf_counter()
        _shift_indent(1)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        _shift_indent(-1)
        elapsed = time.perf_counter() - getattr(self._started, "at", time.perf_counter())
        if exc_type is None:
            self.logger.log(self.level, "%s done in %.3fs", self.title, elapsed)
        else:
            self.logger.log(self.level, "%s aborted after %.3fs (%s)", self.title, elapsed, exc_type.__name__)

    def __call__(self, func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            with self:
                return func(*args, **kwargs)

        return wrapper


def compute_log_level(verbose_count: int, quiet_count: int) -> int:
    levels = [
        logging.CRITICAL,
        logging.ERROR,
        logging.WARNING,
        logging.INFO,  # default
        logging.DEBUG,
        TRACE,
    ]
    level_index = 3 + verbose_count - quiet_count
    return levels[max(0, min(level_index, len(levels) - 1))]


class SummaryFormatter(logging.Formatter):
    """Plain INFO lines (command summaries), prefixed and indented otherwise."""

    def __init__(self, fmt: Optional[str] = None, indent: bool = False) -> None:
        super().__init__(fmt=fmt)
        self.indent = indent

    def format(self, record: logging.LogRecord) -> str:
        if record.levelno == logging.INFO:
            text = record.getMessage()
        else:
            text = super().format(record)
        if self.indent:
            return f"{'  ' * get_indent()}{text}"
        return text


def register_trace_level() -> None:
    """Adds the TRACE level and Logger.trace; calling it again changes nothing."""
    if getattr(logging, "TRACE", None) == TRACE:
        return

    def trace(self: logging.Logger, msg: Any, *args: Any, **kwargs: Any) -> None:
        if self.isEnabledFor(TRACE):
            self._log(TRACE, msg, args, **kwargs)

    logging.addLevelName(TRACE, "TRACE")
    logging.TRACE = TRACE  # type: ignore[attr-defined]
    logging.Logger.trace = trace  # type: ignore[attr-defined]
