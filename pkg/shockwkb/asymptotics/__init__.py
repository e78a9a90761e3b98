"""
Step-like asymptotics: problem definition, regular part, discontinuity
curve, layer terms and assembled solutions.
"""

from shockwkb.asymptotics.characteristics import solve_u0_characteristics
from shockwkb.asymptotics.front import (
    CompatibilityReport,
    FrontCurve,
    check_compatibility,
    solve_front,
)
from shockwkb.asymptotics.layer import (
    AlphaSet,
    LayerTerm,
    LayerValues,
    QuadratureTerm,
    V0Term,
    V1Term,
    WaveFrame,
    alphas,
    build_frame,
    calF1,
    check_cond_v1,
    check_membership,
    check_solvability,
    quadrature_bound,
    phi1,
    phi1_from_source,
    v0,
    v1_closed,
    vj_quadrature,
)
from shockwkb.asymptotics.problem import (
    Background,
    BackgroundKind,
    BurgersProblem,
    CoefficientSeries,
    Grid,
    SampledField,
    Window,
    check_regular_residual,
    compute_f1,
    sampled_transport_residual,
)
from shockwkb.asymptotics.solution import (
    AsymptoticSolution,
    SolutionFields,
    assemble,
    step_limit,
    travelling_wave,
)

__all__ = [
    "AlphaSet",
    "AsymptoticSolution",
    "Background",
    "BackgroundKind",
    "BurgersProblem",
    "CoefficientSeries",
    "CompatibilityReport",
    "FrontCurve",
    "Grid",
    "LayerTerm",
    "LayerValues",
    "QuadratureTerm",
    "SampledField",
    "SolutionFields",
    "V0Term",
    "V1Term",
    "WaveFrame",
    "Window",
    "alphas",
    "assemble",
    "build_frame",
    "calF1",
    "check_compatibility",
    "check_cond_v1",
    "check_membership",
    "check_regular_residual",
    "check_solvability",
    "compute_f1",
    "quadrature_bound",
    "phi1",
    "phi1_from_source",
    "sampled_transport_residual",
    "solve_front",
    "solve_u0_characteristics",
    "step_limit",
    "travelling_wave",
    "v0",
    "v1_closed",
    "vj_quadrature",
]
