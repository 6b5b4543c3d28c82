"""Logging for qhpolytope.

Every module logs below the ``qhpolytope`` logger. Console output always
goes to stderr: the CLI prints its JSON document and CSV clouds on stdout
and those must stay parseable when logging is turned up.
"""

import logging
import logging.handlers
import os
import sys
from pathlib import Path
from typing import Any

import numpy as np
from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "qhpolytope"

_FORMATS = {
    "default": "%(asctime)s %(levelname)-8s %(name)s: %(message)s",
    "debug": "%(asctime)s %(levelname)-8s %(name)s [%(module)s:%(lineno)d %(funcName)s] %(message)s",
    "console": "[%(levelname)s] %(name)s: %(message)s",
    "rich": "%(message)s",
}

_ENV_PREFIX = "QHPOLYTOPE_LOG_"


def _level(name: str, fallback: int) -> int:
    value = logging.getLevelName(name.upper())
    return value if isinstance(value, int) else fallback


def _env(key: str, default: str | None = None) -> str | None:
    return os.environ.get(_ENV_PREFIX + key, default)


def get_logger(name: str) -> logging.Logger:
    """Return ``qhpolytope.<name>``, e.g. ``get_logger("solver.fiber")``."""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def _console_handler(format_type: str) -> logging.Handler:
    if format_type == "rich":
        return RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True, markup=False)
    return logging.StreamHandler(sys.stderr)


def _file_handler(path: Path, max_bytes: int, backup_count: int) -> logging.Handler:
    path.parent.mkdir(parents=True, exist_ok=True)
    return logging.handlers.RotatingFileHandler(path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8")


def setup_logging(
    level: str = "WARNING",
    console: bool = True,
    file_path: str | None = None,
    file_level: str = "DEBUG",
    format_type: str = "default",
    max_bytes: int = 10 * 1024 * 1024,
    backup_count: int = 5,
) -> None:
    """(Re)configure the ``qhpolytope`` logger.

    Existing handlers are dropped first, so calling this twice does not
    duplicate records. The logger itself accepts everything and each
    handler filters at its own level.

    Parameters
    ----------
    level : str, default "WARNING"
        Level of the stderr handler
    console : bool, default True
        Attach the stderr handler at all
    file_path : str, optional
        Rotating log file; parent directories are created
    file_level : str, default "DEBUG"
        Level of the file handler
    format_type : str, default "default"
        "default", "debug", "console" or "rich". Unknown names fall back to
        "default". Files never get the rich layout.
    max_bytes, backup_count : int
        Rotation settings for the file handler
    """
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    pattern = _FORMATS.get(format_type, _FORMATS["default"])

    if console:
        stream = _console_handler(format_type)
        stream.setLevel(_level(level, logging.WARNING))
        stream.setFormatter(logging.Formatter(pattern))
        root.addHandler(stream)

    if file_path:
        on_disk = _file_handler(Path(file_path), max_bytes, backup_count)
        on_disk.setLevel(_level(file_level, logging.DEBUG))
        on_disk.setFormatter(logging.Formatter(_FORMATS["debug" if format_type == "debug" else "default"]))
        root.addHandler(on_disk)


def configure_from_env() -> None:
    """Configure logging from ``QHPOLYTOPE_LOG_*`` variables.

    LEVEL (console level, WARNING), FILE (rotating log path), FILE_LEVEL
    (DEBUG), FORMAT (default) and DISABLE_CONSOLE ("1" turns stderr off).
    """
    setup_logging(
        level=_env("LEVEL", "WARNING"),
        console=_env("DISABLE_CONSOLE", "0") != "1",
        file_path=_env("FILE"),
        file_level=_env("FILE_LEVEL", "DEBUG"),
        format_type=_env("FORMAT", "default"),
    )


def configure_for_testing(level: str = "WARNING") -> None:
    setup_logging(level=level, format_type="console")


def configure_for_development(output_dir: str | None = None) -> None:
    """DEBUG to a rich stderr console and to ``<output_dir>/qhpolytope.log``."""
    target = Path(output_dir or "./logs") / "qhpolytope.log"
    setup_logging(level="DEBUG", file_path=str(target), format_type="rich")


def get_performance_logger() -> logging.Logger:
    """Logger for timing records.

    Detached from the package logger so long sampling runs do not flood the
    console. Records are dropped unless ``QHPOLYTOPE_LOG_PERF=1`` or the
    caller attaches a handler.
    """
    perf = logging.getLogger(f"{ROOT_LOGGER}.performance")
    if perf.handlers:
        return perf

    perf.propagate = False
    if _env("PERF", "0") == "1":
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s PERF %(message)s"))
        perf.addHandler(handler)
        perf.setLevel(logging.INFO)
    else:
        perf.addHandler(logging.NullHandler())
    return perf


def _summarize(value: Any) -> str:
    # Matrices and point clouds are logged by shape, not by content.
    if isinstance(value, np.ndarray):
        return f"ndarray{value.shape}<{value.dtype}>"
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], np.ndarray):
        return f"{type(value).__name__}[{len(value)} x ndarray{value[0].shape}]"
    return repr(value)[:100]


def log_function_call(func_name: str, **kwargs: Any) -> None:
    """Record an entry-point call on ``qhpolytope.calls`` at DEBUG."""
    calls = get_logger("calls")
    if calls.isEnabledFor(logging.DEBUG):
        args = ", ".join(f"{key}={_summarize(value)}" for key, value in kwargs.items())
        calls.debug("%s(%s)", func_name, args)


def log_performance_metric(operation: str, duration: float, **metadata: Any) -> None:
    """Emit ``operation duration=<s> key=value ...`` on the performance logger."""
    fields = " ".join(f"{key}={value}" for key, value in sorted(metadata.items()))
    get_performance_logger().info("%s duration=%.3fs %s", operation, duration, fields)


if not logging.getLogger(ROOT_LOGGER).handlers and not logging.getLogger().handlers:
    configure_from_env()
