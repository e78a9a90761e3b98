"""
Numerical evidence for the asymptotics: PDE residual order studies and a
reference finite-difference solver.
"""

from shockwkb.verification.ladder import run_ladder, run_ladder_sync
from shockwkb.verification.refsolve import (
    ComparisonReport,
    EvolutionResult,
    RefSolverConfig,
    compare,
    evolve,
)
from shockwkb.verification.residual import (
    BoundednessReport,
    Region,
    ResidualReport,
    boundedness_check,
    layer_residual,
    order_study,
    pde_residual,
)

__all__ = [
    "BoundednessReport",
    "ComparisonReport",
    "EvolutionResult",
    "RefSolverConfig",
    "Region",
    "ResidualReport",
    "boundedness_check",
    "compare",
    "evolve",
    "layer_residual",
    "order_study",
    "pde_residual",
    "run_ladder",
    "run_ladder_sync",
]
