"""
Structured logging for the segmentation engine
"""

import logging
import sys
from enum import Enum

import structlog


class LogLevel(Enum):
    """Log levels"""
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"


_LEVELS = {
    LogLevel.DEBUG: logging.DEBUG,
    LogLevel.INFO: logging.INFO,
    LogLevel.WARNING: logging.WARNING,
    LogLevel.ERROR: logging.ERROR,
}


def configure_logging(level: str = "info", json: bool = False) -> None:
    """
    Configure structlog for CLI runs

    Records go to stderr; stdout is reserved for reports.
    """
    numeric = _LEVELS[LogLevel(level.lower())]

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]
    renderer = (
        structlog.processors.JSONRenderer()
        if json
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[*processors, renderer],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def bind_frame(frame_index: int, method: int) -> None:
    """Attach frame context to every record emitted on this thread"""
    structlog.contextvars.bind_contextvars(frame=frame_index, method=method)


def clear_frame() -> None:
    structlog.contextvars.clear_contextvars()
