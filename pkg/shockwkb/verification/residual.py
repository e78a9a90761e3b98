"""
PDE residual of assembled solutions and epsilon-ladder order studies.

Studies sample the stretched coordinates (t, tau) and map back through
x = phi(t) + eps*tau, so tail statements are measured where they are made.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from shockwkb.asymptotics.solution import AsymptoticSolution
from shockwkb.constants import (
    BOUNDEDNESS_RATIO,
    DECAY_WIDTH,
    DEFAULT_N_T,
    DEFAULT_N_TAU,
    DEFAULT_TAU_STAR,
    MIN_LADDER_LENGTH,
    REGION_GLOBAL,
    REGION_LEFT,
    REGION_RIGHT,
    REPORT_SCHEMA_VERSION,
    RESIDUAL_FLOOR,
    TAIL_OFFSET_LIMIT,
    VALID_REGIONS,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
SolutionSource = Union[AsymptoticSolution, Callable[[float], AsymptoticSolution]]


@dataclass(frozen=True)
class Region:
    """
    Sampling region in (t, tau).

    RIGHT is tau in [tau*, tau_max], LEFT its mirror, GLOBAL [-tau_max, tau_max].
    tau_max defaults to 40/beta(t). With receding=True the tail threshold is
    tau* + ln(1/eps)/(2*beta(t)), which moves out as eps decreases.
    """

    kind: str = REGION_GLOBAL
    tau_star: float = DEFAULT_TAU_STAR
    tau_max: Optional[float] = None
    t_range: Optional[Tuple[float, float]] = None
    receding: bool = True

    def __post_init__(self):
        if self.kind not in VALID_REGIONS:
            raise ValueError(f"Invalid region '{self.kind}'. Must be one of: {VALID_REGIONS}")
        if self.tau_star <= 0:
            raise ValueError(f"tau_star must be positive, got {self.tau_star}")

    def times(self, solution: AsymptoticSolution, n_t: int) -> np.ndarray:
        t0, t1 = self.t_range if self.t_range is not None else (0.0, solution.curve.omega_plus)
        return np.linspace(t0, t1, n_t)

    def taus(self, beta: np.ndarray, eps: float, n_tau: int) -> np.ndarray:
        """tau samples per t-row; beta has shape (n_t, 1)."""
        upper = self.tau_max if self.tau_max is not None else DECAY_WIDTH / beta
        upper = np.broadcast_to(upper, beta.shape)
        s = np.linspace(0.0, 1.0, n_tau)
        if self.kind == REGION_GLOBAL:
            return -upper + 2.0 * upper * s
        lower = self.tau_star + (math.log(1.0 / eps) / (2.0 * beta) if self.receding else 0.0)
        lower = np.minimum(np.broadcast_to(lower, beta.shape), upper)
        tail = lower + (upper - lower) * s
        return tail if self.kind == REGION_RIGHT else -tail[:, ::-1]

    def offset(self, beta: np.ndarray, eps: float) -> float:
        """
        Largest x-distance eps*threshold between the front and the tail start.

        Zero for GLOBAL. A large offset means the tail sits where the
        coefficients differ from their values on the front.
        """
        if self.kind == REGION_GLOBAL:
            return 0.0
        taus = self.taus(beta, eps, 2)
        edge = taus[:, 0] if self.kind == REGION_RIGHT else taus[:, -1]
        return float(eps * np.max(np.abs(edge)))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "tau_star": self.tau_star,
            "tau_max": self.tau_max,
            "t_range": list(self.t_range) if self.t_range is not None else None,
            "receding": self.receding,
        }


def pde_residual(solution: AsymptoticSolution, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
    """
    R = eps*u_xx - a(x,t,eps)*u_t - b(x,t,eps)*u*u_x with the truncated coefficient series.
    """
    fields = solution.fields(x, t, eps)
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    return _combine(solution, fields, x, t, eps)


def layer_residual(
    solution: AsymptoticSolution, t: ArrayLike, tau: ArrayLike, eps: float
) -> ArrayLike:
    """Residual at x = phi(t) + eps*tau."""
    t = np.asarray(t, dtype=float)
    tau = np.asarray(tau, dtype=float)
    fields = solution.layer_fields(t, tau, eps)
    x = solution.curve.phi(t) + eps * tau
    return _combine(solution, fields, x, t, eps)


def _combine(solution: AsymptoticSolution, fields, x, t, eps: float) -> ArrayLike:
    coefficients = solution.problem.coefficients
    a = coefficients.a_total(x, t, eps)
    b = coefficients.b_total(x, t, eps)
    residual = eps * fields.u_xx - a * fields.u_t - b * fields.u * fields.u_x
    return float(residual) if np.ndim(residual) == 0 else residual


def _resolve(source: SolutionSource, eps: float) -> AsymptoticSolution:
    return source if isinstance(source, AsymptoticSolution) else source(eps)


def _validate_ladder(ladder: Sequence[float]) -> List[float]:
    ladder = [float(eps) for eps in ladder]
    if len(ladder) < MIN_LADDER_LENGTH:
        raise ValueError(f"Order study needs at least {MIN_LADDER_LENGTH} epsilon values, got {len(ladder)}")
    if any(eps <= 0 for eps in ladder) or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError(f"Epsilon ladder must be positive and strictly decreasing: {ladder}")
    return ladder


def region_sup(
    solution: AsymptoticSolution,
    region: Region,
    eps: float,
    n_t: int = DEFAULT_N_T,
    n_tau: int = DEFAULT_N_TAU,
) -> float:
    """Sup-norm of the residual over the mapped region grid."""
    ts = region.times(solution, n_t)[:, None]
    beta = np.asarray(solution.frame.beta(ts), dtype=float)
    taus = region.taus(beta, eps, n_tau)
    residual = np.asarray(layer_residual(solution, ts, taus, eps))
    if not np.all(np.isfinite(residual)):
        raise FloatingPointError(f"Non-finite residual at eps={eps}")
    return float(np.max(np.abs(residual)))


@dataclass
class ResidualReport:
    """Per-eps residual sup-norms over a region plus the fitted log-log slope."""

    region: Region
    order: int
    epsilons: List[float]
    sups: List[float]
    n_t: int
    n_tau: int
    slope: Optional[float] = None
    intercept: Optional[float] = None
    offsets: List[float] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def rows(self) -> Iterator[Tuple[float, float, str]]:
        """(epsilon, sup_residual, region) rows."""
        for eps, sup in zip(self.epsilons, self.sups):
            yield eps, sup, self.region.kind

    def to_dict(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "order": self.order,
            "region": self.region.to_dict(),
            "grid": {"n_t": self.n_t, "n_tau": self.n_tau},
            "epsilon": self.epsilons,
            "sup_residual": self.sups,
            "slope": self.slope,
            "intercept": self.intercept,
            "tail_offset": self.offsets,
            "notes": self.notes,
        }


def fit_slope(epsilons: Sequence[float], sups: Sequence[float]) -> Tuple[float, float]:
    """Least-squares slope and intercept of log(sup) against log(eps)."""
    slope, intercept = np.polyfit(np.log(epsilons), np.log(sups), 1)
    return float(slope), float(intercept)


def order_study(
    source: SolutionSource,
    region: Region,
    ladder: Sequence[float],
    n_t: int = DEFAULT_N_T,
    n_tau: int = DEFAULT_N_TAU,
) -> ResidualReport:
    """
    Residual sup-norm per eps and the fitted order.

    Args:
        source: An assembled solution, or a builder eps -> solution
        region: Region in (t, tau)
        ladder: At least three strictly decreasing eps values
        n_t: Number of t-rows
        n_tau: Number of tau samples per row

    Returns:
        ResidualReport; slope is None when every sup is below the absolute floor
    """
    ladder = _validate_ladder(ladder)
    order = None
    sups = []
    offsets = []
    for eps in ladder:
        solution = _resolve(source, eps)
        order = solution.order
        sup = region_sup(solution, region, eps, n_t, n_tau)
        beta = np.asarray(solution.frame.beta(region.times(solution, n_t)[:, None]), dtype=float)
        offsets.append(region.offset(beta, eps))
        logger.info(f"Residual Y_{order} [{region.kind}] eps={eps:g}: sup={sup:.6e}")
        sups.append(sup)

    report = ResidualReport(region, order, ladder, sups, n_t, n_tau, offsets=offsets)
    if max(offsets) > TAIL_OFFSET_LIMIT:
        report.notes.append(
            f"tail starts up to {max(offsets):.3g} away from the front in x (limit {TAIL_OFFSET_LIMIT:g}); "
            "the fitted slope mixes in the x-variation of the coefficients, use smaller eps"
        )
        logger.warning(
            f"Tail offset {max(offsets):.3g} exceeds {TAIL_OFFSET_LIMIT:g} for region {region.kind}; "
            "slope is not asymptotic on this ladder"
        )
    if max(sups) < RESIDUAL_FLOOR:
        report.notes.append(f"all sup-norms below {RESIDUAL_FLOOR:g}; slope fit skipped")
        logger.warning(f"Slope fit skipped for region {region.kind}: residual at round-off level")
    elif min(sups) <= 0:
        report.notes.append("zero sup-norm on the ladder; slope fit skipped")
    else:
        report.slope, report.intercept = fit_slope(ladder, sups)
        logger.info(f"Fitted residual order [{region.kind}]: {report.slope:.4f}")
    return report


@dataclass(frozen=True)
class BoundednessReport:
    """O(1) check: the sup-norm does not grow along the ladder."""

    epsilons: List[float]
    sups: List[float]
    maximum: float
    ratio: Optional[float]

    @property
    def passed(self) -> bool:
        return self.ratio is None or self.ratio <= BOUNDEDNESS_RATIO

    def to_dict(self) -> Dict:
        return {
            "epsilon": self.epsilons,
            "sup_residual": self.sups,
            "maximum": self.maximum,
            "ratio": self.ratio,
            "passed": self.passed,
        }


def boundedness_check(
    source: SolutionSource,
    region: Region,
    ladder: Sequence[float],
    n_t: int = DEFAULT_N_T,
    n_tau: int = DEFAULT_N_TAU,
) -> BoundednessReport:
    """
    Max over the ladder of the residual sup-norm and the max/min ratio.

    The ratio is skipped (None) when every sup-norm is below the absolute floor.
    """
    ladder = _validate_ladder(ladder)
    sups = [region_sup(_resolve(source, eps), region, eps, n_t, n_tau) for eps in ladder]
    maximum = max(sups)
    ratio = None if maximum < RESIDUAL_FLOOR else maximum / max(min(sups), RESIDUAL_FLOOR)
    return BoundednessReport(ladder, sups, maximum, ratio)
