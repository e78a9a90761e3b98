"""
Structured error messages for shockwkb.

Every CLI failure and every failed ladder run is rendered through the same
block layout so logs and stderr read alike.
"""

import logging
from typing import Any, Dict, List, Optional

from shockwkb.exceptions import ShockWKBError

ErrorContext = Dict[str, Any]
SuggestionList = List[str]

# Long expression strings and arrays in context are clipped
MAX_CONTEXT_VALUE_LENGTH = 500
MAX_TOTAL_CONTEXT_LENGTH = 2000

logger = logging.getLogger(__name__)

__all__ = [
    "ErrorFormatter",
    "log_structured_error",
    "ErrorContext",
    "SuggestionList",
]

_SUGGESTIONS: Dict[str, SuggestionList] = {
    "PARSE_ERROR": [
        "Expressions use x, t, numbers, + - * / ^, parentheses and "
        "sin cos exp ln sqrt tanh sinh cosh atan",
        "Powers are written with ^, e.g. (x^2+1)^2",
    ],
    "DOMAIN_ERROR": ["Check that ln/sqrt arguments stay positive over the window"],
    "COEFFICIENT_VANISHES": ["Shrink the grid window so that a0*b0 stays away from zero"],
    "RHO_ZERO": ["Set front.rho to a nonzero value"],
    "B0_DEPENDS_ON_X": ["The discontinuity curve needs b0 = b0(t); remove x from b0"],
    "PHI0_OUTSIDE_WINDOW": ["Choose front.phi0 inside [grid.x_min, grid.x_max]"],
    "ORIENTATION": ["Flip the sign of rho so that beta(t) > 0"],
    "FRAME_DEGENERATE": ["The layer amplitude vanishes; check the background u0 against phi'"],
    "SOLVABILITY_VIOLATED": [
        "alpha_1..alpha_4 must vanish along the front for a bounded first layer term",
        "Use order 0 or adjust a1, b1",
    ],
    "NONZERO_BACKGROUND": ["First-order assembly needs background type 'zero'"],
    "BLOWUP_BEFORE_T": ["Shorten time.t1 or widen the grid window"],
    "GRADIENT_CATASTROPHE": ["Shorten the time range below the reported crossing time"],
    "QUADRATURE_FAIL": ["Check that Phi is bounded on the sampled tau range"],
    "CFL_COLLAPSE": ["Reduce the node count or check a(x,t,eps) for near-zero values"],
    "NAN_DETECTED": ["Lower refsolve.cfl or switch refsolve.advection to upwind"],
}


class ErrorFormatter:
    """Standardized error message formatter."""

    @staticmethod
    def _truncate_context(
        context: ErrorContext,
        max_value_length: int = MAX_CONTEXT_VALUE_LENGTH,
        max_total_length: int = MAX_TOTAL_CONTEXT_LENGTH,
    ) -> ErrorContext:
        """
        Clip context values.

        Args:
            context: Context dictionary
            max_value_length: Limit per value
            max_total_length: Limit over all values

        Returns:
            Clipped context; a ``_note`` entry marks dropped keys
        """
        if not context:
            return context

        truncated = {}
        total_length = 0
        for key, value in context.items():
            value_str = str(value)
            if len(value_str) > max_value_length:
                logger.debug(f"Truncated context value '{key}' ({len(value_str)} chars)")
                value_str = value_str[:max_value_length] + "... [truncated]"
            total_length += len(value_str)
            if total_length > max_total_length:
                truncated["_note"] = f"Additional context truncated (exceeded {max_total_length} chars)"
                break
            truncated[key] = value_str
        return truncated

    @staticmethod
    def format_error_message(
        error_type: str,
        component: str,
        details: str,
        context: Optional[ErrorContext] = None,
        suggestions: Optional[SuggestionList] = None,
    ) -> str:
        """
        Format an error with a fixed layout.

        Format:
            [ERROR_TYPE] component: details
            Context:
              - key: value
            Suggestions:
              - suggestion
        """
        lines = [f"[{error_type}] {component}: {details}"]

        if context:
            lines.append("\nContext:")
            for key, value in ErrorFormatter._truncate_context(context).items():
                lines.append(f"  - {key}: {value}")

        if suggestions:
            lines.append("\nSuggestions:")
            for suggestion in suggestions:
                lines.append(f"  - {suggestion}")

        return "\n".join(lines)

    @staticmethod
    def format_shockwkb_error(error: ShockWKBError, component: str = "shockwkb") -> str:
        """
        Format a package error with its code, context and code-specific suggestions.
        """
        context = {"code": error.code}
        context.update({k: v for k, v in error.context.items() if v is not None})
        return ErrorFormatter.format_error_message(
            error_type=type(error).__name__,
            component=component,
            details=str(error),
            context=context,
            suggestions=_SUGGESTIONS.get(error.code),
        )

    @staticmethod
    def format_configuration_error(
        parameter: str,
        value: Any,
        valid_range: str,
        suggestions: Optional[SuggestionList] = None,
    ) -> str:
        """Format an invalid configuration parameter."""
        return ErrorFormatter.format_error_message(
            error_type="ConfigurationError",
            component="configuration",
            details=f"Invalid configuration parameter '{parameter}'",
            context={"parameter": parameter, "provided_value": value, "valid_range": valid_range},
            suggestions=suggestions
            or [
                f"Set '{parameter}' to a value within {valid_range}",
                "See config/example_config.yaml for a complete problem file",
            ],
        )

    @staticmethod
    def format_ladder_error(epsilon: float, error: Exception, run_info: Optional[ErrorContext] = None) -> str:
        """
        Format a failed epsilon-ladder run.

        Args:
            epsilon: The eps value of the run
            error: Exception raised by the run
            run_info: Optional position in the ladder
        """
        context = {
            "epsilon": epsilon,
            "error_type": type(error).__name__,
            "error_message": str(error),
        }
        if isinstance(error, ShockWKBError):
            context["code"] = error.code
        if run_info:
            context.update(run_info)
        suggestions = _SUGGESTIONS.get(getattr(error, "code", ""), None)
        return ErrorFormatter.format_error_message(
            error_type="LadderRunError",
            component="ladder",
            details=f"Run failed for eps={epsilon:g}",
            context=context,
            suggestions=suggestions or ["Review the log for the failing step"],
        )


def log_structured_error(
    logger_obj: logging.Logger,
    error: Exception,
    component: str,
    context: Optional[ErrorContext] = None,
    level: int = logging.ERROR,
) -> None:
    """
    Log an error in the structured layout.

    Args:
        logger_obj: Logger instance
        error: Exception to log
        component: Component where the error occurred
        context: Optional context information
        level: Logging level (default: ERROR)
    """
    error_msg = ErrorFormatter.format_error_message(
        error_type=type(error).__name__,
        component=component,
        details=str(error),
        context=context,
        suggestions=_SUGGESTIONS.get(getattr(error, "code", ""), None),
    )
    logger_obj.log(level, error_msg, exc_info=True if level >= logging.ERROR else None)
