"""
Logging for the Dagger Workbench.

A single stderr handler sits on the package logger ``dagger_workbench``.
Module loggers from :func:`get_logger` propagate to it, so the verbosity of
the whole package is set in one place. Reports are written to stdout and never
share a stream with log records.

Suite runs attach their context with ``extra={"suite": ..., "model": ...}``;
both formatters render it.
"""

import logging
import sys
from typing import Any

from pythonjsonlogger import jsonlogger

from dagger_workbench.core.config import settings

PACKAGE_LOGGER = "dagger_workbench"

# Record attributes rendered when a call passes them through ``extra``
CONTEXT_FIELDS = ("suite", "model")


def _context(record: logging.LogRecord) -> dict[str, str]:
    return {
        name: str(getattr(record, name))
        for name in CONTEXT_FIELDS
        if getattr(record, name, None) is not None
    }


class StructuredFormatter(jsonlogger.JsonFormatter):
    """JSON records with application, level and run context."""

    def add_fields(
        self,
        log_record: dict[str, Any],
        record: logging.LogRecord,
        message_dict: dict[str, Any],
    ) -> None:
        super().add_fields(log_record, record, message_dict)

        log_record["app_name"] = settings.app_name
        log_record["app_version"] = settings.app_version
        if log_record.get("timestamp") is None:
            log_record["timestamp"] = record.created
        log_record["level"] = record.levelname
        log_record.update(_context(record))


class ContextFormatter(logging.Formatter):
    """Plain text lines with the run context appended in brackets."""

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        context = _context(record)
        if not context:
            return line
        return f"{line} [{' '.join(f'{k}={v}' for k, v in context.items())}]"


def resolve_level(level: str) -> int:
    """Map a level name to its number; unknown names fall back to INFO."""
    value = getattr(logging, level.upper(), None)
    return value if isinstance(value, int) else logging.INFO


def setup_logger(name: str = PACKAGE_LOGGER) -> logging.Logger:
    """
    Install the stderr handler on a logger.

    Args:
        name: Logger name; the package logger unless a standalone one is needed

    Returns:
        The configured logger. Calling again returns it unchanged.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    level = resolve_level(settings.log_level)
    logger.setLevel(level)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    if settings.log_format.lower() == "json":
        formatter: logging.Formatter = StructuredFormatter(
            fmt="%(timestamp)s %(level)s %(name)s %(message)s"
        )
    else:
        formatter = ContextFormatter(
            fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.propagate = False
    return logger


logger = setup_logger(PACKAGE_LOGGER)


def get_logger(name: str) -> logging.Logger:
    """
    Logger for a module.

    Modules of the package get a child of the package logger; any other
    name gets a standalone logger with its own handler.
    """
    if name == PACKAGE_LOGGER or name.startswith(f"{PACKAGE_LOGGER}."):
        return logging.getLogger(name)
    return setup_logger(name)


def set_level(level: str) -> None:
    """Change the level of the package logger and its handler."""
    value = resolve_level(level)
    logger.setLevel(value)
    for handler in logger.handlers:
        handler.setLevel(value)
