"""Tests for exception handling."""

import pytest

from py_bwcodes.exceptions import (
    BWCodesError,
    CapacityError,
    ExceptionFormatter,
    ParseError,
    UsageError,
    ValidationError,
    format_exception_for_logging,
)


def test_hierarchy():
    """Test the error class hierarchy."""
    assert issubclass(UsageError, BWCodesError)
    assert issubclass(UsageError, ValueError)
    assert issubclass(ParseError, ValueError)
    assert issubclass(ValidationError, BWCodesError)
    assert not issubclass(CapacityError, ValueError)


def test_parse_error_prefix():
    """Test ParseError source and line prefix."""
    exc = ParseError("expected 6 characters, got 5", line=3, source="A_6_4_3.txt")
    assert str(exc) == "A_6_4_3.txt, line 3: expected 6 characters, got 5"
    assert exc.fields() == {"line": 3, "source": "A_6_4_3.txt"}


def test_parse_error_without_location():
    """Test ParseError without a location."""
    assert str(ParseError("empty input")) == "empty input"
    assert str(ParseError("bad row", line=2)) == "line 2: bad row"


def test_capacity_error_fields():
    """Test CapacityError fields."""
    exc = CapacityError("over the cap", cap=10, key=(6, 4, 3, "bounded"))
    assert exc.cap == 10
    assert exc.fields() == {"cap": 10, "key": (6, 4, 3, "bounded")}


def test_validation_error_key():
    """Test ValidationError key."""
    assert ValidationError("bounded below constant", key=(6, 4, 4)).fields() == {"key": (6, 4, 4)}


def test_base_error_has_no_fields():
    """Test that the base error has no fields."""
    assert UsageError("n must be positive").fields() == {}


def test_format_exception_basic():
    """Test basic exception formatting."""
    try:
        raise ValueError("Test error message")
    except Exception as e:
        formatted = ExceptionFormatter.format_exception(e)

        assert "ValueError" in formatted
        assert "Test error message" in formatted
        assert "Traceback" in formatted


def test_format_exception_with_traceback():
    """Test exception formatting with traceback."""

    def level3():
        raise RuntimeError("Deep error")

    def level2():
        level3()

    def level1():
        level2()

    try:
        level1()
    except Exception as e:
        formatted = ExceptionFormatter.format_exception(e)

        assert "level3" in formatted
        assert "level1" in formatted
        assert "level1" not in ExceptionFormatter.format_exception(e, max_frames=1)


def test_get_exception_context():
    """Test extracting exception context."""
    try:
        1 / 0
    except Exception as e:
        context = ExceptionFormatter.get_exception_context(e)

        assert context["type"] == "ZeroDivisionError"
        assert context["file"] == "test_exceptions.py"
        assert context["line"] is not None
        assert context["function"] == "test_get_exception_context"
        assert context["fields"] == {}


def test_context_carries_library_fields():
    """Test that exception context includes library fields."""
    try:
        raise ParseError("bad character 'x'", line=2, source="code.txt")
    except ParseError as e:
        context = ExceptionFormatter.get_exception_context(e)

    assert context["fields"] == {"line": 2, "source": "code.txt"}


def test_format_exception_for_logging():
    """Test formatting exception specifically for logging."""
    try:
        raise KeyError("missing_key")
    except Exception as e:
        formatted = format_exception_for_logging(e)

        assert "KeyError" in formatted
        assert "Location:" in formatted
        assert "Traceback" in formatted
        assert "Details:" not in formatted


def test_format_exception_details_skip_empty_fields():
    """Test that empty fields are left out of the details line."""
    try:
        raise CapacityError("over the cap", cap=2000)
    except CapacityError as e:
        formatted = format_exception_for_logging(e, level="WARNING")

    assert "Details: cap=2000" in formatted
    assert "key=" not in formatted
    assert "Traceback" not in formatted


def test_format_exception_with_context():
    """Test formatting exception with additional context."""
    try:
        raise UsageError("d must be positive")
    except Exception as e:
        formatted = format_exception_for_logging(e, context={"command": "search"})

        assert "UsageError: d must be positive" in formatted
        assert "Context: {'command': 'search'}" in formatted


def test_exception_no_traceback():
    """Test handling exception without traceback."""
    context = ExceptionFormatter.get_exception_context(ValueError("No traceback"))

    assert context["type"] == "ValueError"
    assert context["file"] is None
    assert context["line"] is None
    assert ExceptionFormatter.format_exception(ValueError("x")) == "ValueError: x"


@pytest.mark.parametrize("level", ["DEBUG", "INFO", "ERROR", "CRITICAL"])
def test_format_exception_levels(level):
    """Test formatting at each level."""
    try:
        raise ValidationError("weights out of order", key=(9, 4, 7))
    except ValidationError as e:
        formatted = format_exception_for_logging(e, level=level)

    assert "ValidationError" in formatted
    assert ("Traceback" in formatted) == (level in ("ERROR", "CRITICAL"))
