"""
shockwkb Exceptions.

Custom exception hierarchy. Every error carries a stable ``code`` string that
appears in CLI reports and an ``exit_code`` used by the command dispatcher.
"""

from typing import Any, Optional

from shockwkb.constants import (
    EXIT_CONDITION_FAILURE,
    EXIT_CONFIG_ERROR,
    EXIT_NUMERIC_FAILURE,
)


class ShockWKBError(Exception):
    """Base exception for shockwkb errors."""

    code = "SHOCKWKB_ERROR"
    exit_code = EXIT_NUMERIC_FAILURE

    def __init__(self, message: str, code: Optional[str] = None, **context: Any):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.context = context


class ConfigurationError(ShockWKBError):
    """Configuration-related errors."""

    code = "CONFIG_ERROR"
    exit_code = EXIT_CONFIG_ERROR


class ExpressionError(ShockWKBError):
    """Malformed coefficient expressions."""

    code = "EXPRESSION_ERROR"
    exit_code = EXIT_CONFIG_ERROR


class ParseError(ExpressionError):
    """Expression text does not match the grammar."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        super().__init__(message, offset=offset, expected=expected)
        self.offset = offset
        self.expected = expected

    def __str__(self) -> str:
        text = f"{self.args[0]} at offset {self.offset}"
        if self.expected:
            text += f" (expected {self.expected})"
        return text


class EvaluationDomainError(ShockWKBError):
    """Expression evaluated outside its real domain."""

    code = "DOMAIN_ERROR"

    def __init__(self, message: str, node: Any = None):
        super().__init__(message, node=str(node) if node is not None else None)
        self.node = node


class ConditionError(ShockWKBError):
    """A solvability or compatibility condition does not hold."""

    code = "CONDITION_FAILED"
    exit_code = EXIT_CONDITION_FAILURE


class SolvabilityError(ConditionError):
    """alpha_1..alpha_4 do not vanish along the front."""

    code = "SOLVABILITY_VIOLATED"


class MissingBackgroundTermError(ConditionError):
    """A regular term u_j was required but not supplied."""

    code = "MISSING_BACKGROUND_TERM"


class CoefficientError(ConditionError):
    """a0*b0 vanishes somewhere in the working window."""

    code = "COEFFICIENT_VANISHES"


class FrontError(ConditionError):
    """The discontinuity curve cannot be built (RHO_ZERO, B0_DEPENDS_ON_X)."""

    code = "FRONT_ERROR"


class FrameError(ConditionError):
    """Degenerate or wrongly oriented wave frame (FRAME_DEGENERATE, ORIENTATION)."""

    code = "FRAME_ERROR"


class NumericalError(ShockWKBError):
    """Numerical procedure failed."""

    code = "NUMERIC_FAILURE"


class GradientCatastropheError(NumericalError):
    """Characteristics crossed before the requested time."""

    code = "GRADIENT_CATASTROPHE"

    def __init__(self, message: str, time: float):
        super().__init__(message, time=time)
        self.time = time


class BlowupError(NumericalError):
    """Front ODE left its maximal interval before T."""

    code = "BLOWUP_BEFORE_T"

    def __init__(self, message: str, omega_plus: float):
        super().__init__(message, omega_plus=omega_plus)
        self.omega_plus = omega_plus


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach its tolerance."""

    code = "QUADRATURE_FAIL"


class SolverError(NumericalError):
    """Reference solver failure (CFL_COLLAPSE, NAN_DETECTED)."""

    code = "SOLVER_ERROR"
