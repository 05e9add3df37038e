"""Logger implementation for py_bwcodes."""

import sys
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger as _loguru_logger

from .config import get_config_manager
from .defaults import get_default_config
from .exceptions import ValidationError, format_exception_for_logging
from .utils import ensure_directory_exists

_handler_ids = []


def _configure_logger():
    """Configure the global loguru logger once (idempotent)."""
    if _handler_ids:
        return

    try:
        _loguru_logger.remove()
    except ValueError:
        pass

    fallback_reason = None
    try:
        config = get_config_manager().get_logger_config()
    except (ValidationError, OSError) as exc:
        # a broken file must not stop `config init --force` from replacing it
        config = get_default_config()["logger"]
        fallback_reason = str(exc)
    log_format = config.get("format") or "{message}"

    log_file = config.get("file")
    if log_file:
        log_path = Path(log_file)
        if not log_path.is_absolute():
            log_path = Path.cwd() / log_path
        log_path = log_path.resolve()
        ensure_directory_exists(log_path)

        _handler_ids.append(
            _loguru_logger.add(
                sink=str(log_path),
                format=log_format,
                level=config.get("level", "INFO"),
                rotation=config.get("rotation"),
                retention=config.get("retention"),
                compression=config.get("compression"),
                mode="a",
                backtrace=True,
                diagnose=False,
                enqueue=True,
            )
        )

    console_config = config.get("console", {})
    if console_config.get("enabled", True):
        # stdout carries command results, so diagnostics go to stderr
        _handler_ids.append(
            _loguru_logger.add(
                sink=lambda msg: sys.stderr.write(msg),
                format=log_format,
                level=console_config.get("level", config.get("level", "INFO")),
                colorize=console_config.get("colorize", True),
            )
        )

    if fallback_reason:
        _loguru_logger.warning("Configuration not loaded, logging with defaults: {}", fallback_reason)


class BWCodesLogger:
    """Wrapper around loguru logger."""

    _LEVEL_MAP = {
        "DEBUG": "debug",
        "INFO": "info",
        "WARNING": "warning",
        "CRITICAL": "critical",
    }

    def __init__(self, config_path: Optional[Path] = None):
        self._logger = _loguru_logger
        if config_path:
            get_config_manager().load_config(config_path)
        _configure_logger()

    def debug(self, message: str, *args, **kwargs) -> None:
        self._logger.opt(depth=1).debug(message, *args, **kwargs)

    def info(self, message: str, *args, **kwargs) -> None:
        self._logger.opt(depth=1).info(message, *args, **kwargs)

    def warning(self, message: str, *args, **kwargs) -> None:
        self._logger.opt(depth=1).warning(message, *args, **kwargs)

    def error(self, message: str, *args, **kwargs) -> None:
        self._logger.opt(depth=1).error(message, *args, **kwargs)

    def exception(
        self,
        exc: Exception,
        level: str = "ERROR",
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        formatted = format_exception_for_logging(exc, level, context)
        method = self._LEVEL_MAP.get(level.upper(), "error")
        # braces in error text must not be read as format fields
        getattr(self._logger.opt(depth=1), method)("{}", formatted)

    def complete(self) -> None:
        self._logger.complete()
        sys.stderr.flush()
        sys.stdout.flush()

    def set_config(self, config_path: Path) -> None:
        """Reconfigure sinks from a new configuration file."""
        get_config_manager().load_config(config_path)
        for handler_id in _handler_ids:
            try:
                self._logger.remove(handler_id)
            except ValueError:
                pass
        _handler_ids.clear()
        _configure_logger()


_default_logger: Optional[BWCodesLogger] = None


def get_logger(config_path: Optional[Path] = None) -> BWCodesLogger:
    """Get logger instance (singleton pattern)."""
    global _default_logger

    if _default_logger is None:
        _default_logger = BWCodesLogger(config_path=config_path)
    elif config_path is not None:
        _default_logger.set_config(config_path)

    return _default_logger
