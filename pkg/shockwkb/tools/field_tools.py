"""
Figure grids: the assembled solution and its layer terms sampled over the
configured (x, t) grid, one CSV per field and eps.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from shockwkb.asymptotics.problem import SampledField
from shockwkb.asymptotics.solution import AsymptoticSolution
from shockwkb.config import ProblemConfig
from shockwkb.constants import EXIT_SUCCESS
from shockwkb.tools.common import Pipeline, build_pipeline, eps_label, write_csv

logger = logging.getLogger(__name__)

FIELD_HEADER = ("x", "t", "value")
FRONT_HEADER = ("t", "phi", "dphi")
FRONT_FILE = "front_eps-independent.csv"
CHARACTERISTICS_FILE = "u0_characteristics_eps-independent.csv"


def sample_fields(solution: AsymptoticSolution, grid, eps: float) -> List[SampledField]:
    """u, V0 and (order 1) V1 on the figure grid."""
    X, T = grid.mesh()
    fields = [SampledField("u", grid, np.asarray(solution.u(X, T, eps)))]
    for j in range(solution.order + 1):
        fields.append(SampledField(f"V{j}", grid, np.asarray(solution.layer_component(j, X, T, eps))))
    return fields


def write_figures(
    pipeline: Pipeline,
    order: int,
    epsilons: Sequence[float],
    out_dir: Path,
    grid=None,
) -> Dict[str, Path]:
    """
    Write <field>_eps<value>.csv for every eps plus the front knots, and u0
    traced from the initial profile when one is configured.

    Returns:
        Mapping file name -> written path
    """
    solution = pipeline.solution(order)
    grid = grid or pipeline.config.figure_grid()
    written = {}
    for eps in epsilons:
        for sampled in sample_fields(solution, grid, eps):
            name = f"{sampled.name}_eps{eps_label(eps)}.csv"
            written[name] = write_csv(Path(out_dir) / name, FIELD_HEADER, sampled.rows())
    written[FRONT_FILE] = write_csv(Path(out_dir) / FRONT_FILE, FRONT_HEADER, pipeline.curve.rows())
    traced = pipeline.characteristic_u0(grid)
    if traced is not None:
        written[CHARACTERISTICS_FILE] = write_csv(
            Path(out_dir) / CHARACTERISTICS_FILE, FIELD_HEADER, traced.rows()
        )
    return written


def cmd_build(
    config: ProblemConfig,
    order: int,
    out_dir: Path,
    epsilons: Optional[Sequence[float]] = None,
) -> int:
    """
    Sample u, V0 and V1 (order 1) over the configured grid.

    Args:
        config: Problem configuration
        order: 0 or 1
        out_dir: Output directory
        epsilons: Overrides the configured eps values
    """
    pipeline = build_pipeline(config)
    epsilons = list(epsilons) if epsilons else config.epsilon
    written = write_figures(pipeline, order, epsilons, out_dir)
    print(f"✅ Wrote {len(written)} files to {out_dir}")
    return EXIT_SUCCESS
