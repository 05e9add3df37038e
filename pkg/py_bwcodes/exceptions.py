"""Error types and enhanced exception formatting for py_bwcodes."""

import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple


class BWCodesError(Exception):
    """Base class for every error raised by py_bwcodes."""

    def fields(self) -> Dict[str, Any]:
        """Structured fields rendered next to the message in logs."""
        return {}


class UsageError(BWCodesError, ValueError):
    """An operation was called outside its preconditions."""


class CapacityError(BWCodesError):
    """A configured size limit would be exceeded."""

    def __init__(self, message: str, cap: Optional[int] = None, key: Optional[Tuple] = None):
        super().__init__(message)
        self.cap = cap
        self.key = key

    def fields(self) -> Dict[str, Any]:
        return {"cap": self.cap, "key": self.key}


class ParseError(BWCodesError, ValueError):
    """Malformed text input; `line` is 1-based."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.source = source

    def fields(self) -> Dict[str, Any]:
        return {"line": self.line, "source": self.source}


class ValidationError(BWCodesError, ValueError):
    """Data violates a documented invariant."""

    def __init__(self, message: str, key: Optional[Any] = None):
        super().__init__(message)
        self.key = key

    def fields(self) -> Dict[str, Any]:
        return {"key": self.key}


class ExceptionFormatter:
    """Formats exceptions with file/line information."""

    @staticmethod
    def format_exception(exc: Exception, max_frames: Optional[int] = None) -> str:
        """Format exception with a compact traceback."""
        exc_type = type(exc).__name__
        exc_msg = str(exc)

        frames = ExceptionFormatter._extract_frames(exc)
        if not frames:
            return f"{exc_type}: {exc_msg}"
        if max_frames:
            frames = frames[-max_frames:]

        lines = [f"\n{exc_type}: {exc_msg}", "\nTraceback (most recent call last):"]
        for frame in frames:
            lines.append(f'  File "{Path(frame.filename)}", line {frame.lineno}, in {frame.name}')
            if frame.line:
                lines.append(f"    {frame.line.strip()}")
        lines.append(f"\n{exc_type}: {exc_msg}")
        return "\n".join(lines)

    @staticmethod
    def _extract_frames(exc: Exception) -> List:
        tb = exc.__traceback__
        if tb is None:
            return []
        return traceback.extract_tb(tb)

    @staticmethod
    def get_exception_context(exc: Exception) -> dict:
        """Extract the raising location and any library error fields."""
        frames = ExceptionFormatter._extract_frames(exc)
        fields = exc.fields() if isinstance(exc, BWCodesError) else {}

        if not frames:
            return {
                "type": type(exc).__name__,
                "message": str(exc),
                "file": None,
                "line": None,
                "function": None,
                "code": None,
                "fields": fields,
            }

        last_frame = frames[-1]
        return {
            "type": type(exc).__name__,
            "message": str(exc),
            "file": Path(last_frame.filename).name,
            "full_path": last_frame.filename,
            "line": last_frame.lineno,
            "function": last_frame.name,
            "code": last_frame.line.strip() if last_frame.line else None,
            "fields": fields,
        }


_formatter = ExceptionFormatter()


def format_exception_for_logging(
    exc: Exception, level: str = "ERROR", context: Optional[dict] = None
) -> str:
    """Format exception for a log record."""
    exc_context = _formatter.get_exception_context(exc)

    parts = [f"{exc_context['type']}: {exc_context['message']}"]

    if exc_context["file"]:
        location = exc_context["file"]
        if exc_context["function"]:
            location += f":{exc_context['function']}"
        if exc_context["line"]:
            location += f":{exc_context['line']}"
        parts.append(f"Location: {location}")

    if exc_context["code"]:
        parts.append(f"Code: {exc_context['code']}")

    details = {k: v for k, v in exc_context["fields"].items() if v is not None}
    if details:
        parts.append("Details: " + ", ".join(f"{k}={v}" for k, v in details.items()))

    if level.upper() in ("ERROR", "CRITICAL"):
        parts.append("\n" + _formatter.format_exception(exc))

    if context:
        parts.append(f"\nContext: {context}")

    return "\n".join(parts)
