"""
Reference solver: method of lines for u_t = (eps*u_xx - b*(u^2/2)_x)/a.

Second-order central diffusion, Engquist-Osher upwind (or central) flux
differences for the advection, explicit RK4 with a pointwise stability
bound, Dirichlet boundaries frozen at the asymptotic far-field values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.integrate import trapezoid

from shockwkb.asymptotics.solution import AsymptoticSolution
from shockwkb.constants import (
    ADVECTION_CENTRAL,
    ADVECTION_UPWIND,
    CHECKPOINT_FRACTIONS,
    DEFAULT_CFL,
    DEFAULT_MAX_CONCURRENCY,
    DEFAULT_NODES,
    DT_FLOOR,
    LAYER_MARGIN,
    MIN_NODES,
    NONZERO_TOLERANCE,
    REPORT_SCHEMA_VERSION,
    VALID_ADVECTION_SCHEMES,
)
from shockwkb.exceptions import CoefficientError, ConfigurationError, SolverError
from shockwkb.verification.ladder import run_ladder_sync

logger = logging.getLogger(__name__)


class RefSolverConfig(BaseModel):
    """Reference solver settings; x_L/x_R default to the front range plus a layer margin."""

    model_config = ConfigDict(extra="forbid")

    x_L: Optional[float] = Field(default=None, description="Left domain end")
    x_R: Optional[float] = Field(default=None, description="Right domain end")
    n_x: int = Field(default=DEFAULT_NODES, ge=MIN_NODES, description="Node count")
    T: Optional[float] = Field(default=None, gt=0, description="End time (defaults to the front's)")
    cfl: float = Field(default=DEFAULT_CFL, gt=0, le=1, description="Stability safety factor")
    advection: str = Field(default=ADVECTION_UPWIND, description="upwind or central")
    boundary: str = Field(default="dirichlet", description="Boundary mode")

    @field_validator("advection")
    @classmethod
    def validate_advection(cls, v: str) -> str:
        if v not in VALID_ADVECTION_SCHEMES:
            raise ValueError(f"Invalid advection '{v}'. Must be one of: {VALID_ADVECTION_SCHEMES}")
        return v

    @field_validator("boundary")
    @classmethod
    def validate_boundary(cls, v: str) -> str:
        if v != "dirichlet":
            raise ValueError(f"Invalid boundary '{v}'. Only 'dirichlet' is supported")
        return v

    @model_validator(mode="after")
    def validate_domain(self) -> "RefSolverConfig":
        if self.x_L is not None and self.x_R is not None and not self.x_L < self.x_R:
            raise ValueError(f"x_L={self.x_L} must be less than x_R={self.x_R}")
        return self


@dataclass
class EvolutionResult:
    """Numeric field at the checkpoints."""

    epsilon: float
    xs: np.ndarray
    times: List[float]
    fields: List[np.ndarray]
    steps: int

    def at(self, t: float) -> np.ndarray:
        return self.fields[self.times.index(t)]


def _auto_domain(init: AsymptoticSolution, eps: float, T: float) -> Tuple[float, float]:
    ts = np.linspace(0.0, T, 2001)
    phi = init.curve.phi(ts)
    margin = LAYER_MARGIN * eps / float(np.min(init.frame.beta(ts)))
    return float(np.min(phi)) - margin, float(np.max(phi)) + margin


def _check_domain(init: AsymptoticSolution, eps: float, T: float, x_L: float, x_R: float) -> None:
    needed_L, needed_R = _auto_domain(init, eps, T)
    if x_L > needed_L or x_R < needed_R:
        raise ConfigurationError(
            f"Domain [{x_L}, {x_R}] must contain the front range with margin "
            f"{LAYER_MARGIN:g}*eps/beta: [{needed_L:.6g}, {needed_R:.6g}]",
            code="DOMAIN_TOO_SMALL",
        )


def _positive_part(u: np.ndarray) -> np.ndarray:
    return 0.5 * np.maximum(u, 0.0) ** 2


def _negative_part(u: np.ndarray) -> np.ndarray:
    return 0.5 * np.minimum(u, 0.0) ** 2


class MethodOfLines:
    """Semi-discrete right-hand side and stable step size for one eps."""

    def __init__(self, coefficients, eps: float, xs: np.ndarray, advection: str):
        self.coefficients = coefficients
        self.eps = eps
        self.xs = xs
        self.dx = float(xs[1] - xs[0])
        self.advection = advection
        self._cache: Dict[float, Tuple[np.ndarray, np.ndarray]] = {}

    def coefficients_at(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """a and b on the nodes; stages sharing a time reuse the arrays."""
        if t not in self._cache:
            if len(self._cache) > 4:
                self._cache.clear()
            a = np.broadcast_to(self.coefficients.a_total(self.xs, t, self.eps), self.xs.shape)
            b = np.broadcast_to(self.coefficients.b_total(self.xs, t, self.eps), self.xs.shape)
            self._cache[t] = (a, b)
        return self._cache[t]

    def advection_difference(self, u: np.ndarray, direction: np.ndarray) -> np.ndarray:
        """Approximation of (u^2/2)_x at interior nodes."""
        if self.advection == ADVECTION_CENTRAL:
            flux = 0.5 * u**2
            return (flux[2:] - flux[:-2]) / (2.0 * self.dx)
        plus, minus = _positive_part(u), _negative_part(u)
        # interface i+1/2 for i = 0..n-2
        forward = plus[:-1] + minus[1:]
        backward = minus[:-1] + plus[1:]
        upwind = (forward[1:] - forward[:-1]) / self.dx
        downwind = (backward[1:] - backward[:-1]) / self.dx
        return np.where(direction >= 0, upwind, downwind)

    def rhs(self, u: np.ndarray, t: float) -> np.ndarray:
        a, b = self.coefficients_at(t)
        a_in, b_in = a[1:-1], b[1:-1]
        diffusion = self.eps * (u[2:] - 2.0 * u[1:-1] + u[:-2]) / self.dx**2
        advection = self.advection_difference(u, np.sign(b_in / a_in))
        du = np.zeros_like(u)
        du[1:-1] = (diffusion - b_in * advection) / a_in
        return du

    def stable_step(self, u: np.ndarray, t: float, cfl: float) -> float:
        a, b = self.coefficients_at(t)
        rate = 2.0 * self.eps / (np.abs(a) * self.dx**2) + np.abs(b * u) / (np.abs(a) * self.dx)
        return cfl / float(np.max(rate))


def evolve(
    p,
    eps: float,
    init: AsymptoticSolution,
    cfg: RefSolverConfig,
) -> EvolutionResult:
    """
    Integrate the full PDE from Y_m(., 0, eps).

    Args:
        p: Problem (coefficient series)
        eps: Small parameter
        init: Assembled solution providing the initial profile and boundary values
        cfg: Solver settings

    Returns:
        EvolutionResult with fields at T*{1/4, 1/2, 3/4, 1}

    Raises:
        ConfigurationError: Domain misses the front range plus margin, or T beyond the front
        CoefficientError: a(x, t, eps) comes near zero on the domain
        SolverError: CFL_COLLAPSE when dt underflows, NAN_DETECTED with the step index
    """
    T = cfg.T if cfg.T is not None else init.curve.omega_plus
    if T > init.curve.omega_plus * (1 + 1e-12):
        raise ConfigurationError(
            f"End time {T} exceeds the front validity interval [0, {init.curve.omega_plus:.6g}]"
        )

    auto_L, auto_R = _auto_domain(init, eps, T)
    x_L = cfg.x_L if cfg.x_L is not None else auto_L
    x_R = cfg.x_R if cfg.x_R is not None else auto_R
    _check_domain(init, eps, T, x_L, x_R)

    xs = np.linspace(x_L, x_R, cfg.n_x)
    lines = MethodOfLines(p.coefficients, eps, xs, cfg.advection)

    for t in np.linspace(0.0, T, 101):
        a, _ = lines.coefficients_at(float(t))
        if float(np.min(np.abs(a))) <= NONZERO_TOLERANCE:
            raise CoefficientError(f"a(x, t, eps) vanishes on the solver domain at t={t:.6g}")

    def boundary(t: float) -> Tuple[float, float]:
        left, right = init.far_field(t, eps, x_L, x_R)
        return float(left), float(right)

    u = np.asarray(init.u(xs, 0.0, eps), dtype=float).copy()
    u[0], u[-1] = boundary(0.0)

    checkpoints = [fraction * T for fraction in CHECKPOINT_FRACTIONS]
    logger.info(
        f"Evolving eps={eps:g} on [{x_L:.4g}, {x_R:.4g}] with {cfg.n_x} nodes "
        f"({cfg.advection}) to T={T:.4g}"
    )

    t = 0.0
    step = 0
    fields = []
    for t_out in checkpoints:
        while t_out - t > 1e-14 * max(1.0, T):
            dt = lines.stable_step(u, t, cfg.cfl)
            if dt < DT_FLOOR:
                raise SolverError(
                    f"Time step collapsed to {dt:.3e} at t={t:.6g}", code="CFL_COLLAPSE", step=step
                )
            dt = min(dt, t_out - t)
            k1 = lines.rhs(u, t)
            k2 = lines.rhs(u + 0.5 * dt * k1, t + 0.5 * dt)
            k3 = lines.rhs(u + 0.5 * dt * k2, t + 0.5 * dt)
            k4 = lines.rhs(u + dt * k3, t + dt)
            u = u + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            t = t + dt
            step += 1
            u[0], u[-1] = boundary(t)
            if not np.all(np.isfinite(u)):
                raise SolverError(f"Non-finite values at step {step}", code="NAN_DETECTED", step=step)
        t = t_out
        fields.append(u.copy())
        logger.debug(f"eps={eps:g}: checkpoint t={t_out:.4g} after {step} steps")

    return EvolutionResult(eps, xs, checkpoints, fields, step)


@dataclass(frozen=True)
class CheckpointDeviation:
    t: float
    sup: float
    l2: float


@dataclass
class LadderEntry:
    """Deviations of one eps run against the reference solution."""

    epsilon: float
    checkpoints: List[CheckpointDeviation]
    evolution: EvolutionResult = field(repr=False)
    reference: AsymptoticSolution = field(repr=False)

    @property
    def end_sup(self) -> float:
        return self.checkpoints[-1].sup

    def snapshot_rows(self) -> Iterator[Tuple[float, float, float, float, float]]:
        """(x, t, u_numeric, u_asymptotic, diff) rows in (t, x) order."""
        xs = self.evolution.xs
        for t, values in zip(self.evolution.times, self.evolution.fields):
            expected = np.asarray(self.reference.u(xs, t, self.epsilon))
            for x, numeric, asymptotic in zip(xs, values, expected):
                yield float(x), float(t), float(numeric), float(asymptotic), float(numeric - asymptotic)

    def to_dict(self) -> Dict:
        return {
            "epsilon": self.epsilon,
            "steps": self.evolution.steps,
            "domain": [float(self.evolution.xs[0]), float(self.evolution.xs[-1])],
            "checkpoints": [{"t": c.t, "sup": c.sup, "l2": c.l2} for c in self.checkpoints],
            "end_sup": self.end_sup,
        }


@dataclass
class ComparisonReport:
    """Numeric-vs-asymptotic deviations per eps, ladder order."""

    order: int
    config: RefSolverConfig
    entries: List[LadderEntry]

    @property
    def end_sups(self) -> List[float]:
        return [entry.end_sup for entry in self.entries]

    @property
    def decreasing(self) -> bool:
        sups = self.end_sups
        return all(later < earlier for earlier, later in zip(sups, sups[1:]))

    def to_dict(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "order": self.order,
            "solver": self.config.model_dump(),
            "runs": [entry.to_dict() for entry in self.entries],
            "end_sup_decreasing": self.decreasing,
        }


def deviations(result: EvolutionResult, reference: AsymptoticSolution) -> List[CheckpointDeviation]:
    """Sup-norm and L2 deviation from the reference at every checkpoint."""
    out = []
    for t, values in zip(result.times, result.fields):
        diff = values - np.asarray(reference.u(result.xs, t, result.epsilon))
        out.append(
            CheckpointDeviation(
                t=float(t),
                sup=float(np.max(np.abs(diff))),
                l2=float(np.sqrt(trapezoid(diff**2, result.xs))),
            )
        )
    return out


def compare(
    solution: AsymptoticSolution,
    ladder,
    cfg: RefSolverConfig,
    reference: Optional[AsymptoticSolution] = None,
    max_concurrency: int = DEFAULT_MAX_CONCURRENCY,
) -> ComparisonReport:
    """
    Evolve from Y_m(., 0, eps) for each eps and measure the deviation from Y_m.

    Takes an assembled solution rather than a problem and an order: the
    solution already carries the coefficient series the solver integrates,
    the order m reported back, the initial profile Y_m(., 0, eps) and the
    far-field Dirichlet values, so the run cannot pair a profile with
    another problem's coefficients.

    Args:
        solution: Assembled Y_m providing the initial profile and boundaries
        ladder: Epsilon values
        cfg: Solver settings
        reference: Solution to compare against (defaults to ``solution``)
        max_concurrency: Simultaneous eps runs

    Returns:
        ComparisonReport with checkpoint deviations per eps
    """
    reference = reference if reference is not None else solution

    def run(eps: float) -> LadderEntry:
        result = evolve(solution.problem, eps, solution, cfg)
        return LadderEntry(eps, deviations(result, reference), result, reference)

    entries = run_ladder_sync(list(ladder), run, max_concurrency)
    report = ComparisonReport(solution.order, cfg, entries)
    logger.info(
        "End-time sup deviations: "
        + ", ".join(f"eps={e.epsilon:g}: {e.end_sup:.3e}" for e in entries)
    )
    return report
