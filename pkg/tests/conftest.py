"""
Shared fixtures: the worked example pipeline and a constant-coefficient
problem whose first approximation is the exact travelling wave.
"""

import copy

import pytest

from shockwkb.asymptotics import (
    BurgersProblem,
    CoefficientSeries,
    Window,
    alphas,
    assemble,
    build_frame,
    solve_front,
)
from shockwkb.config import ProblemConfig
from shockwkb.example import EXAMPLE_CONFIG, example_config
from shockwkb.tools.common import build_pipeline

CONSTANT_CONFIG = {
    "coefficients": {"a": ["1", "0"], "b": ["1", "0"]},
    "background": {"type": "zero"},
    "front": {"rho": 1.0, "phi0": 0.0},
    "epsilon": [0.1, 0.05, 0.025],
    "time": {"t0": 0.0, "t1": 1.0},
    "grid": {"x_min": -3.0, "x_max": 3.0, "nx": 121, "nt": 11},
    "refsolve": {"advection": "upwind"},
}


@pytest.fixture(scope="session")
def example_pipeline():
    """Front, frame and alphas of the worked example (t in [0, 3])."""
    return build_pipeline(example_config())


@pytest.fixture(scope="session")
def example_y0(example_pipeline):
    return example_pipeline.solution(0)


@pytest.fixture(scope="session")
def example_y1(example_pipeline):
    return example_pipeline.solution(1)


@pytest.fixture(scope="session")
def constant_problem():
    """eps*u_xx = u_t + u*u_x on [-3, 3] x [0, 1]."""
    return BurgersProblem(
        CoefficientSeries.from_texts(["1"], ["1"]),
        window=Window(-3.0, 3.0, 1.0),
    )


@pytest.fixture(scope="session")
def constant_solutions(constant_problem):
    """(Y_0, Y_1) for the constant-coefficient problem with rho = 1."""
    curve = solve_front(constant_problem, 1.0, 0.0)
    frame = build_frame(constant_problem, curve)
    alpha_set = alphas(constant_problem, curve, frame)
    return (
        assemble(constant_problem, curve, frame, 0),
        assemble(constant_problem, curve, frame, 1, alpha_set=alpha_set),
    )


@pytest.fixture
def example_data():
    """Mutable copy of the worked example configuration."""
    return copy.deepcopy(EXAMPLE_CONFIG)


@pytest.fixture
def constant_data():
    return copy.deepcopy(CONSTANT_CONFIG)


@pytest.fixture
def constant_config(constant_data):
    return ProblemConfig(**constant_data)
