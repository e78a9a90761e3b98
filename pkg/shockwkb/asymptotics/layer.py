"""
Singular part of the asymptotics on the discontinuity curve.

WaveFrame carries A(t), beta(t) and their exact time derivatives; AlphaSet
the coefficients alpha_0..alpha_6 of Phi_1; LayerTerm implementations give
v_0, the closed-form v_1 and the generic quadrature v_j together with their
partial derivatives in (t, tau).
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad

from shockwkb.asymptotics.front import FrontCurve
from shockwkb.asymptotics.problem import BurgersProblem
from shockwkb.constants import (
    DECAY_TOLERANCE,
    DECAY_WIDTH,
    FRAME_SAMPLES,
    FRAME_TOLERANCE,
    QUAD_EPSABS,
    QUAD_EPSREL,
    QUAD_LIMIT,
    SOLVABILITY_TOLERANCE,
)
from shockwkb.exceptions import FrameError, NumericalError, QuadratureError, SolvabilityError
from shockwkb.exprlang import Expr, diff

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
ProfileFunction = Callable[[float, float], float]


def tanh_sech2(z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """tanh(z) and cosh^-2(z), the latter in overflow-free exponential form."""
    decay = np.exp(-2.0 * np.abs(z))
    return np.tanh(z), 4.0 * decay / (1.0 + decay) ** 2


def log_cosh(z: ArrayLike) -> ArrayLike:
    """ln cosh(z) without overflow."""
    magnitude = np.abs(z)
    return magnitude + np.log1p(np.exp(-2.0 * magnitude)) - np.log(2.0)


def cosh2_ratio(beta: float, s: ArrayLike, tau: float) -> ArrayLike:
    """cosh^2(beta*s) / cosh^2(beta*tau), finite for |beta*tau| up to several hundred."""
    s_abs = np.abs(beta * s)
    tau_abs = abs(beta * tau)
    return np.exp(2.0 * (s_abs - tau_abs)) * (
        (1.0 + np.exp(-2.0 * s_abs)) / (1.0 + np.exp(-2.0 * tau_abs))
    ) ** 2


# ---------------------------------------------------------------------------
# Wave frame
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrameSample:
    """Frame quantities at one or more times along the front."""

    t: ArrayLike
    phi: ArrayLike
    dphi: ArrayLike
    ddphi: ArrayLike
    A: ArrayLike
    beta: ArrayLike
    dA: ArrayLike
    dbeta: ArrayLike


class WaveFrame:
    """
    Amplitude A(t) and steepness beta(t) of the main layer term along Gamma.

    A = (a0*phi' - b0*u0) / b0 and beta = A*b0/2, all evaluated at (phi(t), t).
    Time derivatives use the exact chain rule with phi' and phi'' from the
    front ODE.
    """

    def __init__(self, problem: BurgersProblem, curve: FrontCurve, u0: Expr):
        self.problem = problem
        self.curve = curve
        self.u0 = u0
        self._scalar_sample = lru_cache(maxsize=4096)(self._compute)

    @property
    def T(self) -> float:
        return self.curve.omega_plus

    def _compute(self, t: ArrayLike) -> FrameSample:
        curve = self.curve
        phi = curve.phi(t)
        dphi = curve.dphi(t)
        ddphi = curve.ddphi(t)
        a0, da0 = curve.trace(self.problem.a0, t)
        b0, db0 = curve.trace(self.problem.b0, t)
        u0, du0 = curve.trace(self.u0, t)
        numerator = a0 * dphi - b0 * u0
        d_numerator = da0 * dphi + a0 * ddphi - db0 * u0 - b0 * du0
        A = numerator / b0
        dA = (d_numerator * b0 - numerator * db0) / b0**2
        return FrameSample(
            t=t,
            phi=phi,
            dphi=dphi,
            ddphi=ddphi,
            A=A,
            beta=0.5 * A * b0,
            dA=dA,
            dbeta=0.5 * (dA * b0 + A * db0),
        )

    def sample(self, t: ArrayLike) -> FrameSample:
        if np.ndim(t) == 0:
            return self._scalar_sample(float(t))
        return self._compute(np.asarray(t, dtype=float))

    def A(self, t: ArrayLike) -> ArrayLike:
        return self.sample(t).A

    def beta(self, t: ArrayLike) -> ArrayLike:
        return self.sample(t).beta

    def dA(self, t: ArrayLike) -> ArrayLike:
        return self.sample(t).dA

    def dbeta(self, t: ArrayLike) -> ArrayLike:
        return self.sample(t).dbeta

    def times(self, n: int = FRAME_SAMPLES) -> np.ndarray:
        return np.linspace(0.0, self.T, n)

    def validate(self, n: int = FRAME_SAMPLES) -> None:
        """
        Check |A| >= 1e-10 and beta > 0 on n samples of [0, T].

        Raises:
            FrameError: FRAME_DEGENERATE or ORIENTATION
        """
        sample = self.sample(self.times(n))
        smallest = float(np.min(np.abs(sample.A)))
        if smallest < FRAME_TOLERANCE:
            raise FrameError(
                f"Layer amplitude A(t) collapses (min |A| = {smallest:.3e})",
                code="FRAME_DEGENERATE",
            )
        lowest = float(np.min(sample.beta))
        if lowest <= 0:
            raise FrameError(
                f"beta(t) must be positive for decay as tau -> +inf (min beta = {lowest:.6g}); "
                "flip the sign of rho",
                code="ORIENTATION",
            )


def build_frame(
    p: BurgersProblem, curve: FrontCurve, u0_on_curve: Optional[Expr] = None
) -> WaveFrame:
    """
    Build and validate the wave frame along the front.

    Args:
        p: Problem
        curve: Solved front
        u0_on_curve: Background u0 (defaults to the problem's u_0, zero for ZERO)

    Returns:
        Validated WaveFrame

    Raises:
        FrameError: FRAME_DEGENERATE if |A| < 1e-10, ORIENTATION if beta <= 0
    """
    u0 = u0_on_curve if u0_on_curve is not None else p.background.term(0)
    frame = WaveFrame(p, curve, u0)
    frame.validate()
    sample = frame.sample(0.0)
    logger.info(f"Wave frame built: A(0)={sample.A:.10g}, beta(0)={sample.beta:.10g}")
    return frame


# ---------------------------------------------------------------------------
# Alpha coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaSample:
    """alpha_0..alpha_6 and the time derivatives needed for v_1 at given times."""

    frame: FrameSample
    alpha: Tuple[ArrayLike, ...]
    dalpha0: ArrayLike
    dalpha5: ArrayLike
    dalpha6: ArrayLike


class AlphaSet:
    """Coefficients of the zero-background Phi_1 along the front."""

    def __init__(self, problem: BurgersProblem, curve: FrontCurve, frame: WaveFrame):
        self.problem = problem
        self.curve = curve
        self.frame = frame
        coefficients = problem.coefficients
        self._a1 = coefficients.a_k(1)
        self._b1 = coefficients.b_k(1)
        self._a0_x = diff(problem.a0, "x")
        self._b0_x = diff(problem.b0, "x")
        self._scalar_sample = lru_cache(maxsize=4096)(self._compute)

    def _compute(self, t: ArrayLike) -> AlphaSample:
        curve = self.curve
        fs = self.frame.sample(t)
        A, beta, dA, dbeta = fs.A, fs.beta, fs.dA, fs.dbeta
        dphi, ddphi = fs.dphi, fs.ddphi
        a0 = curve.at(self.problem.a0, t)
        a0_x = curve.at(self._a0_x, t)
        b0_x, db0_x = curve.trace(self._b0_x, t)
        a1, da1 = curve.trace(self._a1, t)
        b1, db1 = curve.trace(self._b1, t)

        ratio = A / beta
        d_ratio = (dA * beta - A * dbeta) / beta**2
        half_sq = 0.5 * A**2

        alpha0 = -A * a1 * dphi + half_sq * b1
        alpha1 = a0 * dA - half_sq * b0_x
        alpha2 = -ratio * a0 * dbeta + A * a0_x * dphi - A**2 * b0_x
        alpha3 = half_sq * b0_x
        alpha4 = -a0 * d_ratio - ratio * a0_x * dphi + (A**2 / beta) * b0_x
        alpha5 = A * a1 * dphi - A**2 * b1 + (A**2 / (2.0 * beta)) * b0_x
        alpha6 = half_sq * b1

        dalpha0 = -dA * a1 * dphi - A * da1 * dphi - A * a1 * ddphi + A * dA * b1 + half_sq * db1
        d_shift = A * dA / beta - A**2 * dbeta / (2.0 * beta**2)
        dalpha5 = (
            dA * a1 * dphi
            + A * da1 * dphi
            + A * a1 * ddphi
            - 2.0 * A * dA * b1
            - A**2 * db1
            + d_shift * b0_x
            + (A**2 / (2.0 * beta)) * db0_x
        )
        dalpha6 = A * dA * b1 + half_sq * db1

        return AlphaSample(
            frame=fs,
            alpha=(alpha0, alpha1, alpha2, alpha3, alpha4, alpha5, alpha6),
            dalpha0=dalpha0,
            dalpha5=dalpha5,
            dalpha6=dalpha6,
        )

    def sample(self, t: ArrayLike) -> AlphaSample:
        if np.ndim(t) == 0:
            return self._scalar_sample(float(t))
        return self._compute(np.asarray(t, dtype=float))

    def values(self, t: ArrayLike) -> Tuple[ArrayLike, ...]:
        """(alpha_0, ..., alpha_6) at t."""
        return self.sample(t).alpha


def alphas(p: BurgersProblem, curve: FrontCurve, frame: WaveFrame) -> AlphaSet:
    """Build the alpha_0..alpha_6 evaluators; a_1, b_1 default to zero when absent."""
    return AlphaSet(p, curve, frame)


def check_solvability(alpha_set: AlphaSet, T: float, n: int = FRAME_SAMPLES) -> Dict[str, float]:
    """
    Sup-norms of alpha_1..alpha_4 over [0, T].

    Returns:
        {"alpha1": ..., "alpha2": ..., "alpha3": ..., "alpha4": ...}; the caller
        compares against the solvability tolerance
    """
    values = alpha_set.values(np.linspace(0.0, T, n))
    return {f"alpha{k}": float(np.max(np.abs(values[k]))) for k in range(1, 5)}


def check_cond_v1(p: BurgersProblem, curve: FrontCurve, frame: WaveFrame) -> float:
    """
    Sup over [0, T] of |d/dt [(a1(phi,t)*phi' - b1(phi,t)*A) / b0(phi,t)]|.

    The derivative is formed by the exact chain rule along the curve.
    """
    t = frame.times()
    fs = frame.sample(t)
    a1, da1 = curve.trace(p.coefficients.a_k(1), t)
    b1, db1 = curve.trace(p.coefficients.b_k(1), t)
    b0, db0 = curve.trace(p.b0, t)
    bracket = a1 * fs.dphi - b1 * fs.A
    d_bracket = da1 * fs.dphi + a1 * fs.ddphi - db1 * fs.A - b1 * fs.dA
    rate = (d_bracket * b0 - bracket * db0) / b0**2
    return float(np.max(np.abs(rate)))


def phi1(alpha_set: AlphaSet, frame: WaveFrame, t: ArrayLike, tau: ArrayLike) -> ArrayLike:
    """Closed-form zero-background Phi_1(t, tau)."""
    sample = alpha_set.sample(t)
    a0, a1, a2, a3, a4, a5, a6 = sample.alpha
    tau = np.asarray(tau, dtype=float)
    z = sample.frame.beta * tau
    th = np.tanh(z)
    value = a0 + a1 * tau + a2 * tau * th + a3 * tau * th**2 + a4 * log_cosh(z) + a5 * th + a6 * th**2
    return float(value) if np.ndim(value) == 0 else value


# ---------------------------------------------------------------------------
# Layer terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LayerValues:
    """A layer term and its partial derivatives at (t, tau)."""

    value: ArrayLike
    d_tau: ArrayLike
    d_tau2: ArrayLike
    d_t: ArrayLike


class LayerTerm(ABC):
    """Singular-part term v_j(t, tau) with closed-form partials."""

    order: str = "generic"

    def __init__(self, frame: WaveFrame):
        self.frame = frame

    @abstractmethod
    def evaluate(self, t: ArrayLike, tau: ArrayLike) -> LayerValues:
        """Value and partials; t and tau broadcast."""

    @abstractmethod
    def left_limit(self, t: ArrayLike) -> ArrayLike:
        """v_j(t, -inf)."""

    @abstractmethod
    def right_limit(self, t: ArrayLike) -> ArrayLike:
        """v_j(t, +inf)."""

    def value(self, t: ArrayLike, tau: ArrayLike) -> ArrayLike:
        return self.evaluate(t, tau).value


class V0Term(LayerTerm):
    """v0 = A(t) * (1 - tanh(beta(t) * tau))."""

    order = "0"

    def evaluate(self, t: ArrayLike, tau: ArrayLike) -> LayerValues:
        fs = self.frame.sample(t)
        A, beta = fs.A, fs.beta
        tau = np.asarray(tau, dtype=float)
        th, sech2 = tanh_sech2(beta * tau)
        return LayerValues(
            value=A * (1.0 - th),
            d_tau=-A * beta * sech2,
            d_tau2=2.0 * A * beta**2 * th * sech2,
            d_t=fs.dA * (1.0 - th) - A * fs.dbeta * tau * sech2,
        )

    def left_limit(self, t: ArrayLike) -> ArrayLike:
        return 2.0 * self.frame.A(t)

    def right_limit(self, t: ArrayLike) -> ArrayLike:
        return 0.0 * self.frame.A(t)


def v0(frame: WaveFrame, t: ArrayLike, tau: ArrayLike) -> LayerValues:
    """Main layer term and its partials."""
    return V0Term(frame).evaluate(t, tau)


class V1Term(LayerTerm):
    """
    Closed-form first layer term for a zero background:

        v1 = P + (c1 - P + D*tau) * cosh^-2(beta*tau) + Q * tanh(beta*tau)

    with P = alpha_5/(2 beta), Q = (alpha_0 + alpha_6)/(2 beta), D = (alpha_0 - alpha_6)/2.
    """

    order = "1"

    def __init__(self, alpha_set: AlphaSet, c1: float = 0.0, check: bool = True):
        super().__init__(alpha_set.frame)
        self.alpha_set = alpha_set
        self.c1 = c1
        if check:
            report = check_solvability(alpha_set, alpha_set.frame.T)
            worst = max(report.values())
            if worst > SOLVABILITY_TOLERANCE:
                raise SolvabilityError(
                    f"Phi_1 is unbounded: max |alpha_1..alpha_4| = {worst:.3e} "
                    f"exceeds {SOLVABILITY_TOLERANCE:g}",
                    **report,
                )

    def _parts(self, sample: AlphaSample):
        a0, _, _, _, _, a5, a6 = sample.alpha
        beta = sample.frame.beta
        P = a5 / (2.0 * beta)
        Q = (a0 + a6) / (2.0 * beta)
        D = 0.5 * (a0 - a6)
        return P, Q, D

    def evaluate(self, t: ArrayLike, tau: ArrayLike) -> LayerValues:
        sample = self.alpha_set.sample(t)
        fs = sample.frame
        beta, dbeta = fs.beta, fs.dbeta
        a0, _, _, _, _, a5, a6 = sample.alpha
        P, Q, D = self._parts(sample)
        tau = np.asarray(tau, dtype=float)
        th, sech2 = tanh_sech2(beta * tau)
        C = self.c1 - P + D * tau

        value = P + C * sech2 + Q * th
        d_tau = D * sech2 - 2.0 * beta * C * th * sech2 + Q * beta * sech2
        d_tau2 = (
            -4.0 * beta * D * th * sech2
            - 2.0 * beta**2 * C * sech2**2
            + 4.0 * beta**2 * C * th**2 * sech2
            - 2.0 * Q * beta**2 * th * sech2
        )

        dP = (sample.dalpha5 * beta - a5 * dbeta) / (2.0 * beta**2)
        dQ = ((sample.dalpha0 + sample.dalpha6) * beta - (a0 + a6) * dbeta) / (2.0 * beta**2)
        dD = 0.5 * (sample.dalpha0 - sample.dalpha6)
        # fixed tau: d(beta*tau)/dt = beta' * tau
        dsech2 = -2.0 * th * sech2 * dbeta * tau
        dth = sech2 * dbeta * tau
        d_t = dP + (-dP + dD * tau) * sech2 + C * dsech2 + dQ * th + Q * dth

        return LayerValues(value=value, d_tau=d_tau, d_tau2=d_tau2, d_t=d_t)

    def left_limit(self, t: ArrayLike) -> ArrayLike:
        P, Q, _ = self._parts(self.alpha_set.sample(t))
        return P - Q

    def right_limit(self, t: ArrayLike) -> ArrayLike:
        P, Q, _ = self._parts(self.alpha_set.sample(t))
        return P + Q


def v1_closed(
    alpha_set: AlphaSet, frame: WaveFrame, c1: float, t: ArrayLike, tau: ArrayLike
) -> LayerValues:
    """
    First layer term and its partials.

    Raises:
        SolvabilityError: SOLVABILITY_VIOLATED if alpha_1..alpha_4 exceed 1e-9
    """
    if alpha_set.frame is not frame:
        raise ValueError("alpha set was built on a different frame")
    return V1Term(alpha_set, c1).evaluate(t, tau)


def calF1(
    p: BurgersProblem, curve: FrontCurve, frame: WaveFrame, t: ArrayLike, tau: ArrayLike
) -> ArrayLike:
    """
    Source term F_1(t, tau) of the first singular equation on Gamma.

    Background terms u0, u1 come from the problem (zero allowed).
    """
    u0 = frame.u0
    u1 = p.background.term(1)
    coefficients = p.coefficients
    fs = frame.sample(t)
    tau = np.asarray(tau, dtype=float)
    main = V0Term(frame).evaluate(t, tau)

    a0 = curve.at(p.a0, t)
    b0 = curve.at(p.b0, t)
    a0_x = curve.at(diff(p.a0, "x"), t)
    b0_x = curve.at(diff(p.b0, "x"), t)
    a1 = curve.at(coefficients.a_k(1), t)
    b1 = curve.at(coefficients.b_k(1), t)
    u0_val = curve.at(u0, t)
    u0_x = curve.at(diff(u0, "x"), t)
    u1_val = curve.at(u1, t)

    value = (
        a0 * main.d_t
        + b0 * u0_x * main.value
        + (-a1 * fs.dphi + b1 * u0_val + b0 * u1_val) * main.d_tau
        + tau * (-a0_x * fs.dphi + b0_x * u0_val + b0 * u0_x) * main.d_tau
        + (b1 + tau * b0_x) * main.value * main.d_tau
    )
    return float(value) if np.ndim(value) == 0 else value


def phi1_from_source(
    source: ProfileFunction, frame: WaveFrame, t: float, tau: float
) -> float:
    """
    Phi_1(t, tau) = -integral_tau^{40/beta} F_1(t, s) ds.

    This fixes the additive constant by decay at tau -> +inf, which is the
    constant of the printed zero-background Phi_1 when alpha_0 + alpha_6 = 0.
    """
    far = DECAY_WIDTH / frame.beta(t)
    value, _ = quad(
        lambda s: source(t, s), tau, far, epsrel=QUAD_EPSREL, epsabs=QUAD_EPSABS, limit=QUAD_LIMIT
    )
    return -value


def _quadrature_scalar(
    frame: WaveFrame, phi: ProfileFunction, C0: float, tau0: float, t: float, tau: float
) -> float:
    beta = frame.beta(t)
    far = DECAY_WIDTH / beta
    for end in (-far, far):
        if not np.isfinite(phi(t, end)):
            raise NumericalError(f"Phi is not bounded at tau={end:.6g}", code="PHI_UNBOUNDED")

    homogeneous = C0 * cosh2_ratio(beta, tau0, tau)
    if tau == tau0:
        return float(homogeneous)
    result = quad(
        lambda s: cosh2_ratio(beta, s, tau) * phi(t, s),
        tau0,
        tau,
        epsrel=QUAD_EPSREL,
        epsabs=QUAD_EPSABS,
        limit=QUAD_LIMIT,
        full_output=1,
    )
    integral, abserr = result[0], result[1]
    if len(result) > 3 and abserr > max(QUAD_EPSREL * abs(integral), QUAD_EPSREL):
        raise QuadratureError(
            f"Quadrature tolerance not reached at t={t:.6g}, tau={tau:.6g}: {result[3]}",
            abserr=abserr,
        )
    return float(homogeneous + integral)


def vj_quadrature(
    frame: WaveFrame,
    phi: ProfileFunction,
    C0: float,
    tau0: float,
    t: ArrayLike,
    tau: ArrayLike,
) -> ArrayLike:
    """
    Bounded solution of dv/dtau = -2*beta*tanh(beta*tau)*v + Phi(t, tau).

    v = (C0*cosh^2(beta*tau0) + integral_{tau0}^{tau} cosh^2(beta*s)*Phi(t, s) ds) / cosh^2(beta*tau),
    computed with the cosh ratio folded into the integrand.

    Raises:
        QuadratureError: QUADRATURE_FAIL if the adaptive rule misses its tolerance
    """
    t_arr, tau_arr = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(tau, dtype=float))
    values = np.array(
        [
            _quadrature_scalar(frame, phi, C0, tau0, float(ti), float(si))
            for ti, si in zip(t_arr.ravel(), tau_arr.ravel())
        ]
    ).reshape(t_arr.shape)
    return float(values) if values.ndim == 0 else values


class QuadratureTerm(LayerTerm):
    """
    Generic layer term from a user-supplied Phi_j by quadrature.

    d_tau follows from the first-order equation; d_tau2 needs the source
    F_j = dPhi_j/dtau. No t-derivative is available for this path.
    """

    order = "generic"

    def __init__(
        self,
        frame: WaveFrame,
        phi: ProfileFunction,
        C0: float = 0.0,
        tau0: float = 0.0,
        source: Optional[ProfileFunction] = None,
    ):
        super().__init__(frame)
        self.phi = phi
        self.C0 = C0
        self.tau0 = tau0
        self.source = source

    def evaluate(self, t: ArrayLike, tau: ArrayLike) -> LayerValues:
        t_arr, tau_arr = np.broadcast_arrays(
            np.asarray(t, dtype=float), np.asarray(tau, dtype=float)
        )
        beta = self.frame.beta(t_arr)
        th, sech2 = tanh_sech2(beta * tau_arr)
        value = np.asarray(vj_quadrature(self.frame, self.phi, self.C0, self.tau0, t_arr, tau_arr))
        phi_values = np.vectorize(self.phi)(t_arr, tau_arr)
        d_tau = -2.0 * beta * th * value + phi_values
        if self.source is not None:
            source_values = np.vectorize(self.source)(t_arr, tau_arr)
            d_tau2 = -2.0 * beta**2 * sech2 * value - 2.0 * beta * th * d_tau + source_values
        else:
            d_tau2 = np.full_like(value, np.nan)
        return LayerValues(value=value, d_tau=d_tau, d_tau2=d_tau2, d_t=np.full_like(value, np.nan))

    def left_limit(self, t: ArrayLike) -> ArrayLike:
        return self.value(t, -DECAY_WIDTH / self.frame.beta(t))

    def right_limit(self, t: ArrayLike) -> ArrayLike:
        return self.value(t, DECAY_WIDTH / self.frame.beta(t))


# ---------------------------------------------------------------------------
# Numeric space-G checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipReport:
    """Worst tail deviations of a layer term over the sampled times."""

    decay_deviation: float
    left_deviation: float
    tolerance: float = DECAY_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.decay_deviation <= self.tolerance and self.left_deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "decay_deviation": self.decay_deviation,
            "left_deviation": self.left_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_membership(
    term: LayerTerm, frame: WaveFrame, ts: Sequence[float], tolerance: float = DECAY_TOLERANCE
) -> MembershipReport:
    """
    Space-G tail checks at tau = +-40/beta.

    Decay: |tau^n * partial| for n in {0, 1, 2} over the value and every
    finite partial at tau = +40/beta. Left limit: |v(-40/beta) - v(t, -inf)|.
    """
    ts = np.asarray(ts, dtype=float)
    beta = frame.beta(ts)
    right = DECAY_WIDTH / beta
    values = term.evaluate(ts, right)
    decay = 0.0
    for partial in (values.value, values.d_tau, values.d_tau2, values.d_t):
        partial = np.asarray(partial)
        finite = np.isfinite(partial)
        if not np.any(finite):
            continue
        for n in (0, 1, 2):
            decay = max(decay, float(np.max(np.abs(right[finite] ** n * partial[finite]))))
    left = np.asarray(term.value(ts, -right)) - np.asarray(term.left_limit(ts))
    return MembershipReport(
        decay_deviation=decay, left_deviation=float(np.max(np.abs(left))), tolerance=tolerance
    )


@dataclass(frozen=True)
class BoundWitness:
    """Fitted constants of the boundedness estimate for the quadrature term."""

    c1: float
    c2: float
    bound: np.ndarray


def quadrature_bound(
    frame: WaveFrame, phi: ProfileFunction, tau0: float, C0: float, t: float, taus: np.ndarray
) -> BoundWitness:
    """
    Bound c1*(|sinh(2 beta tau)|/(4 beta) + |tau|/2 + c2)*cosh^-2(beta tau) on the quadrature term.

    c1 is the sampled sup of |Phi| (slightly inflated); c2 absorbs the tau0
    endpoint and the homogeneous part C0*cosh^2(beta*tau0).
    """
    beta = frame.beta(t)
    taus = np.asarray(taus, dtype=float)
    lo, hi = min(taus.min(), tau0, 0.0), max(taus.max(), tau0, 0.0)
    samples = np.union1d(np.linspace(lo, hi, 20001), [tau0, 0.0])
    c1 = float(np.max(np.abs([phi(t, s) for s in samples]))) * (1.0 + 1e-9) + 1e-12
    anchor = abs(np.sinh(2.0 * beta * tau0) / (4.0 * beta) + 0.5 * tau0)
    c2 = anchor + abs(C0) * np.cosh(beta * tau0) ** 2 / c1
    th, sech2 = tanh_sech2(beta * taus)
    # sinh(2z)/cosh^2(z) = 2 tanh(z)
    bound = c1 * (np.abs(th) / (2.0 * beta) + (0.5 * np.abs(taus) + c2) * sech2)
    return BoundWitness(c1=c1, c2=float(c2), bound=bound)
