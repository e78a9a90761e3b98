"""
Problem definition: truncated coefficient series, background (regular part)
and the working window, plus the checks on supplied regular terms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence, Tuple, Union

import numpy as np

from shockwkb.constants import COEFFICIENT_SAMPLES, NONZERO_TOLERANCE
from shockwkb.exceptions import CoefficientError, ConfigurationError, MissingBackgroundTermError
from shockwkb.exprlang import ZERO, Expr, diff, evaluate, parse, to_text

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class BackgroundKind(Enum):
    """How the regular part U of the ansatz is supplied."""

    ZERO = "zero"
    EXPRESSIONS = "expressions"


@dataclass(frozen=True)
class CoefficientSeries:
    """Truncated series a = sum eps^k a_k, b = sum eps^k b_k, k = 0..N."""

    a: Tuple[Expr, ...]
    b: Tuple[Expr, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ConfigurationError(
                f"Coefficient series differ in length: {len(self.a)} a-terms, {len(self.b)} b-terms"
            )
        if len(self.a) < 2:
            raise ConfigurationError("Coefficient series need truncation order N >= 1")

    @classmethod
    def from_texts(cls, a: Sequence[str], b: Sequence[str]) -> "CoefficientSeries":
        """Parse both series and pad the shorter (and any N = 0 series) with zero terms."""
        length = max(len(a), len(b), 2)
        a_terms = [parse(text) for text in a] + [ZERO] * (length - len(a))
        b_terms = [parse(text) for text in b] + [ZERO] * (length - len(b))
        return cls(tuple(a_terms), tuple(b_terms))

    @property
    def order(self) -> int:
        """Truncation order N."""
        return len(self.a) - 1

    def a_k(self, k: int) -> Expr:
        return self.a[k] if k < len(self.a) else ZERO

    def b_k(self, k: int) -> Expr:
        return self.b[k] if k < len(self.b) else ZERO

    def a_total(self, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        """a(x, t, eps) summed over the truncated series."""
        return sum(eps**k * evaluate(term, x, t) for k, term in enumerate(self.a))

    def b_total(self, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        """b(x, t, eps) summed over the truncated series."""
        return sum(eps**k * evaluate(term, x, t) for k, term in enumerate(self.b))


@dataclass(frozen=True)
class Background:
    """Regular part of the ansatz: ZERO or user expressions u_0..u_M."""

    kind: BackgroundKind = BackgroundKind.ZERO
    terms: Tuple[Expr, ...] = ()

    @classmethod
    def zero(cls) -> "Background":
        return cls(BackgroundKind.ZERO, ())

    @classmethod
    def from_texts(cls, texts: Sequence[str]) -> "Background":
        return cls(BackgroundKind.EXPRESSIONS, tuple(parse(text) for text in texts))

    @property
    def is_zero(self) -> bool:
        return self.kind is BackgroundKind.ZERO

    def term(self, j: int, required: bool = False) -> Expr:
        """
        Regular term u_j.

        Args:
            j: Index of the term
            required: Raise instead of substituting zero when the term is absent

        Raises:
            MissingBackgroundTermError: If required and not supplied
        """
        if self.is_zero:
            return ZERO
        if j < len(self.terms):
            return self.terms[j]
        if required:
            raise MissingBackgroundTermError(
                f"Background term u_{j} required but only {len(self.terms)} supplied", term=j
            )
        return ZERO


@dataclass(frozen=True)
class Window:
    """Working rectangle [x_min, x_max] x [0, T]."""

    x_min: float
    x_max: float
    T: float

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ConfigurationError(f"Empty window: x_min={self.x_min} >= x_max={self.x_max}")
        if not self.T > 0:
            raise ConfigurationError(f"Window end time must be positive, got T={self.T}")

    def sample(self, n: int = COEFFICIENT_SAMPLES) -> Tuple[np.ndarray, np.ndarray]:
        """Meshgrid (X, T) of n x n points covering the window."""
        xs = np.linspace(self.x_min, self.x_max, n)
        ts = np.linspace(0.0, self.T, n)
        return np.meshgrid(xs, ts)

    def contains(self, x: float) -> bool:
        return self.x_min <= x <= self.x_max


@dataclass(frozen=True)
class BurgersProblem:
    """
    eps*u_xx = a(x,t,eps)*u_t + b(x,t,eps)*u*u_x on the window.

    Immutable after construction; construction samples a0*b0 over the
    window and rejects problems where it comes within 1e-12 of zero.
    """

    coefficients: CoefficientSeries
    background: Background = field(default_factory=Background.zero)
    epsilon_ladder: Tuple[float, ...] = ()
    window: Window = field(default_factory=lambda: Window(-4.0, 4.0, 3.0))

    def __post_init__(self):
        ladder = self.epsilon_ladder
        if any(eps <= 0 for eps in ladder):
            raise ConfigurationError(f"Epsilon values must be positive: {list(ladder)}")
        if any(later >= earlier for earlier, later in zip(ladder, ladder[1:])):
            raise ConfigurationError(f"Epsilon ladder must be strictly decreasing: {list(ladder)}")
        self.check_nonzero_coefficients()

    @property
    def a0(self) -> Expr:
        return self.coefficients.a[0]

    @property
    def b0(self) -> Expr:
        return self.coefficients.b[0]

    @property
    def T(self) -> float:
        return self.window.T

    def check_nonzero_coefficients(self) -> float:
        """
        Sample min |a0*b0| over a 101x101 grid of the window.

        Returns:
            The sampled minimum

        Raises:
            CoefficientError: If any sample is within 1e-12 of zero
        """
        X, T = self.window.sample()
        product = np.abs(evaluate(self.a0, X, T) * evaluate(self.b0, X, T))
        smallest = float(product.min())
        if smallest <= NONZERO_TOLERANCE:
            index = np.unravel_index(int(product.argmin()), product.shape)
            raise CoefficientError(
                f"a0*b0 vanishes at x={X[index]:.6g}, t={T[index]:.6g} "
                f"(a0={to_text(self.a0)}, b0={to_text(self.b0)})",
                minimum=smallest,
            )
        return smallest

    def with_ladder(self, ladder: Sequence[float]) -> "BurgersProblem":
        return BurgersProblem(self.coefficients, self.background, tuple(ladder), self.window)


@dataclass(frozen=True)
class Grid:
    """Tensor grid of x and t samples; rows are t-slices."""

    xs: np.ndarray
    ts: np.ndarray

    @classmethod
    def uniform(cls, x_min: float, x_max: float, nx: int, t0: float, t1: float, nt: int) -> "Grid":
        return cls(np.linspace(x_min, x_max, nx), np.linspace(t0, t1, nt))

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(X, T) arrays of shape (nt, nx)."""
        return np.meshgrid(self.xs, self.ts)


@dataclass(frozen=True)
class SampledField:
    """Values of a named field on a Grid, shape (nt, nx)."""

    name: str
    grid: Grid
    values: np.ndarray

    def rows(self) -> Iterator[Tuple[float, float, float]]:
        """(x, t, value) rows in lexicographic (t, x) order."""
        for i, t in enumerate(self.grid.ts):
            for j, x in enumerate(self.grid.xs):
                yield float(x), float(t), float(self.values[i, j])


def compute_f1(p: BurgersProblem, x: ArrayLike, t: ArrayLike) -> ArrayLike:
    """
    Right-hand side of the first-order regular equation.

    f1 = u0_xx - a1 * u0_t - b1 * u0 * u0_x, with exact derivatives.
    A zero background gives 0.
    """
    u0 = p.background.term(0)
    a1 = p.coefficients.a_k(1)
    b1 = p.coefficients.b_k(1)
    u0_x = diff(u0, "x")
    return (
        evaluate(diff(u0_x, "x"), x, t)
        - evaluate(a1, x, t) * evaluate(diff(u0, "t"), x, t)
        - evaluate(b1, x, t) * evaluate(u0, x, t) * evaluate(u0_x, x, t)
    )


def check_regular_residual(p: BurgersProblem, order: int, grid: Grid) -> float:
    """
    Sup-norm of the regular-hierarchy residual for supplied background terms.

    Args:
        p: Problem
        order: 0 checks a0*u0_t + b0*u0*u0_x = 0;
               1 checks a0*u1_t + b0*(u0*u1)_x = f1
        grid: Sampling grid

    Returns:
        Sup over the grid (0 for a zero background)

    Raises:
        MissingBackgroundTermError: If u0 (or u1 for order 1) is not supplied
        ValueError: If order is not 0 or 1
    """
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order}")
    if p.background.is_zero:
        return 0.0

    X, T = grid.mesh()
    a0 = evaluate(p.a0, X, T)
    b0 = evaluate(p.b0, X, T)
    u0 = p.background.term(0, required=True)
    if order == 0:
        residual = a0 * evaluate(diff(u0, "t"), X, T) + b0 * evaluate(u0, X, T) * evaluate(
            diff(u0, "x"), X, T
        )
    else:
        u1 = p.background.term(1, required=True)
        flux_x = evaluate(u0, X, T) * evaluate(diff(u1, "x"), X, T) + evaluate(
            diff(u0, "x"), X, T
        ) * evaluate(u1, X, T)
        residual = a0 * evaluate(diff(u1, "t"), X, T) + b0 * flux_x - compute_f1(p, X, T)

    sup = float(np.max(np.abs(residual)))
    logger.debug(f"Regular residual (order {order}): {sup:.3e}")
    return sup


def sampled_transport_residual(p: BurgersProblem, u0: SampledField) -> float:
    """
    Sup of |a0*u_t + b0*u*u_x| for a sampled u0, derivatives by second-order differences.

    Used to check the characteristics solver against the order-0 checker
    when u0 has no closed form.
    """
    X, T = u0.grid.mesh()
    u_t, u_x = np.gradient(u0.values, u0.grid.ts, u0.grid.xs, edge_order=2)
    residual = evaluate(p.a0, X, T) * u_t + evaluate(p.b0, X, T) * u0.values * u_x
    return float(np.max(np.abs(residual)))
