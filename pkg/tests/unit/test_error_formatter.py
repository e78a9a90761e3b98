"""
Unit Tests for structured error messages.
"""

import logging

from shockwkb.error_formatter import ErrorFormatter, log_structured_error
from shockwkb.exceptions import BlowupError, FrontError, ParseError


class TestErrorFormatter:
    """Test the block layout."""

    def test_layout(self):
        message = ErrorFormatter.format_error_message(
            "ParseError", "coefficients", "Unknown identifier 'y'",
            context={"field": "a[0]"}, suggestions=["Use x and t"],
        )
        lines = message.splitlines()
        assert lines[0] == "[ParseError] coefficients: Unknown identifier 'y'"
        assert "Context:" in lines
        assert "  - field: a[0]" in lines
        assert lines[-1] == "  - Use x and t"

    def test_context_truncation(self):
        context = {"expression": "x+" * 400, "a": "1", "b": "2"}
        clipped = ErrorFormatter._truncate_context(context, max_value_length=50, max_total_length=66)
        assert clipped["expression"].endswith("... [truncated]")
        assert "_note" in clipped
        assert clipped["a"] == "1"
        assert "b" not in clipped

    def test_package_error_carries_code_and_suggestions(self):
        error = FrontError("rho must be nonzero", code="RHO_ZERO")
        message = ErrorFormatter.format_shockwkb_error(error, component="front")
        assert message.startswith("[FrontError] front: rho must be nonzero")
        assert "  - code: RHO_ZERO" in message
        assert "front.rho" in message

    def test_error_context_is_listed(self):
        error = BlowupError("Front leaves the window", omega_plus=1.25)
        message = ErrorFormatter.format_shockwkb_error(error)
        assert "BLOWUP_BEFORE_T" in message
        assert "omega_plus: 1.25" in message

    def test_parse_error_offset(self):
        message = ErrorFormatter.format_shockwkb_error(ParseError("Incomplete expression", 5, "expression"))
        assert "offset 5" in message

    def test_configuration_error(self):
        message = ErrorFormatter.format_configuration_error("refsolve.cfl", 1.5, "(0, 1]")
        assert "provided_value: 1.5" in message
        assert "Set 'refsolve.cfl' to a value within (0, 1]" in message

    def test_ladder_error_for_plain_exception(self):
        message = ErrorFormatter.format_ladder_error(0.05, RuntimeError("boom"), {"run": 2, "total_runs": 3})
        assert "Run failed for eps=0.05" in message
        assert "error_type: RuntimeError" in message
        assert "Review the log" in message


class TestLogStructuredError:
    """Test logging of structured errors."""

    def test_logged_at_requested_level(self, caplog):
        logger = logging.getLogger("structured_errors")
        with caplog.at_level(logging.WARNING, logger="structured_errors"):
            log_structured_error(
                logger, ValueError("bad ladder"), component="cli", context={"eps": 0.1}, level=logging.WARNING
            )
        assert len(caplog.records) == 1
        record = caplog.records[0]
        assert record.levelno == logging.WARNING
        assert "[ValueError] cli: bad ladder" in record.getMessage()
        assert record.exc_info is None

    def test_error_level_attaches_traceback(self, caplog):
        logger = logging.getLogger("structured_errors")
        with caplog.at_level(logging.ERROR, logger="structured_errors"):
            try:
                raise ValueError("bad ladder")
            except ValueError as error:
                log_structured_error(logger, error, component="cli", level=logging.ERROR)
        record = caplog.records[0]
        assert record.exc_info is not None
        assert record.exc_info[0] is ValueError
