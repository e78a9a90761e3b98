"""
Built-in worked example.

    eps*u_xx = ((t^2+1) + eps*(x^2+1)^2) * u_t + (1 + eps*(x^2+1)^2/(t^2+1)) * u*u_x

with a zero background, rho = 1, phi(0) = 0 and c1 = 0. The front is
phi(t) = atan(t), A = 1 and beta = 1/2, and the first approximation is

    Y_1 = 1 - tanh(tau/2) + eps*(c1 - K*tau/2) / cosh^2(tau/2),
    K = (1 + atan(t)^2)^2 / (1 + t^2),  tau = (x - atan(t)) / eps.
"""

import copy
from typing import Any, Dict, Optional

import numpy as np

from shockwkb.config import ProblemConfig
from shockwkb.constants import DEFAULT_EPSILON_LADDER, FIGURE_EPSILONS, TAIL_EPSILON_LADDER

EXAMPLE_CONFIG: Dict[str, Any] = {
    "coefficients": {
        "a": ["t^2+1", "(x^2+1)^2"],
        "b": ["1", "(x^2+1)^2/(t^2+1)"],
    },
    "background": {"type": "zero"},
    "front": {"rho": 1.0, "phi0": 0.0},
    "epsilon": list(DEFAULT_EPSILON_LADDER),
    "tail_epsilon": list(TAIL_EPSILON_LADDER),
    "c1": 0.0,
    "time": {"t0": 0.0, "t1": 3.0},
    "grid": {"x_min": -4.0, "x_max": 4.0, "nx": 401, "nt": 61},
    "refsolve": {"n_x": 2001, "cfl": 0.9, "advection": "central", "T": 2.0},
}

FIGURE_LADDER = FIGURE_EPSILONS
SIMULATION_LADDER = (0.2, 0.1, 0.05)

# Reduced sizes for smoke runs of the whole pipeline
QUICK_OVERRIDES: Dict[str, Any] = {
    "grid": {"x_min": -4.0, "x_max": 4.0, "nx": 81, "nt": 13},
    "refsolve": {"n_x": 401, "cfl": 0.9, "advection": "central", "T": 0.5},
}
QUICK_RESIDUAL_SAMPLES = (13, 401)


def example_config(overrides: Optional[Dict[str, Any]] = None) -> ProblemConfig:
    """The worked example as a validated ProblemConfig, top-level keys optionally replaced."""
    data = copy.deepcopy(EXAMPLE_CONFIG)
    if overrides:
        data.update(copy.deepcopy(overrides))
    return ProblemConfig(**data)


def closed_form_y1(x, t, eps: float, c1: float = 0.0):
    """Printed first approximation of the worked example."""
    x = np.asarray(x, dtype=float)
    phi = np.arctan(t)
    tau = (x - phi) / eps
    K = (1.0 + phi**2) ** 2 / (1.0 + t**2)
    return 1.0 - np.tanh(tau / 2.0) + eps * (c1 - K * tau / 2.0) / np.cosh(tau / 2.0) ** 2


def closed_form_v1(t, tau, c1: float = 0.0):
    """Printed first layer term of the worked example."""
    tau = np.asarray(tau, dtype=float)
    phi = np.arctan(t)
    K = (1.0 + phi**2) ** 2 / (1.0 + np.asarray(t, dtype=float) ** 2)
    return (c1 - K * tau / 2.0) / np.cosh(tau / 2.0) ** 2
