"""
Epsilon-ladder studies: residual orders and reference-solver comparisons.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple

from shockwkb.config import ProblemConfig
from shockwkb.constants import (
    DEFAULT_N_T,
    DEFAULT_N_TAU,
    EXIT_SUCCESS,
    REGION_GLOBAL,
    REGION_LEFT,
    REGION_RIGHT,
    SLOPE_BAND,
)
from shockwkb.tools.common import build_pipeline, eps_label, write_csv, write_json
from shockwkb.verification.refsolve import RefSolverConfig, compare
from shockwkb.verification.residual import Region, boundedness_check, order_study

logger = logging.getLogger(__name__)

RESIDUAL_HEADER = ("epsilon", "sup_residual", "region")
SNAPSHOT_HEADER = ("x", "t", "u_numeric", "u_asymptotic", "diff")

# Orders claimed for the residual: None means only O(1) boundedness
EXPECTED_SLOPES = {
    (0, REGION_GLOBAL): None,
    (0, REGION_RIGHT): 1.0,
    (0, REGION_LEFT): None,
    (1, REGION_GLOBAL): 1.0,
    (1, REGION_RIGHT): 2.0,
    (1, REGION_LEFT): 2.0,
}


def cmd_residual(
    config: ProblemConfig,
    order: int,
    region_kind: str,
    out_dir: Path,
    ladder: Optional[Sequence[float]] = None,
    samples: Tuple[int, int] = (DEFAULT_N_T, DEFAULT_N_TAU),
) -> int:
    """
    Residual order study of Y_order over a region.

    Tail regions default to config.tail_epsilon when set.
    Writes residual_<region>_Y<order>.json and .csv.
    """
    pipeline = build_pipeline(config)
    solution = pipeline.solution(order)
    ladder = list(ladder) if ladder else config.ladder_for(region_kind)
    region = Region(kind=region_kind)
    n_t, n_tau = samples

    report = order_study(solution, region, ladder, n_t, n_tau)
    data = report.to_dict()
    expected = EXPECTED_SLOPES[(order, region_kind)]
    data["expected_slope"] = expected
    if expected is not None and report.slope is not None:
        data["within_band"] = abs(report.slope - expected) <= SLOPE_BAND
    if expected is None:
        bounded = boundedness_check(solution, region, ladder, n_t, n_tau)
        data["boundedness"] = bounded.to_dict()

    stem = f"residual_{region_kind}_Y{order}"
    write_json(Path(out_dir) / f"{stem}.json", data)
    write_csv(Path(out_dir) / f"{stem}.csv", RESIDUAL_HEADER, report.rows())

    for eps, sup, _ in report.rows():
        print(f"eps={eps:<10g} sup|R|={sup:.6e}")
    if report.slope is not None:
        print(f"fitted order: {report.slope:.4f}" + (f" (expected {expected:g})" if expected else ""))
    for note in report.notes:
        print(f"note: {note}")
    return EXIT_SUCCESS


def cmd_simulate(
    config: ProblemConfig,
    order: int,
    out_dir: Path,
    ladder: Optional[Sequence[float]] = None,
    solver: Optional[RefSolverConfig] = None,
) -> int:
    """
    Reference-solver comparison of Y_order along the ladder.

    Writes comparison_Y<order>.json and snapshot_Y<order>_eps<value>.csv.
    """
    pipeline = build_pipeline(config)
    solution = pipeline.solution(order)
    ladder = list(ladder) if ladder else config.epsilon
    solver = solver or config.refsolve

    report = compare(solution, ladder, solver)
    write_json(Path(out_dir) / f"comparison_Y{order}.json", report.to_dict())
    for entry in report.entries:
        write_csv(
            Path(out_dir) / f"snapshot_Y{order}_eps{eps_label(entry.epsilon)}.csv",
            SNAPSHOT_HEADER,
            entry.snapshot_rows(),
        )

    for entry in report.entries:
        print(f"eps={entry.epsilon:<10g} end sup|u - Y{order}|={entry.end_sup:.6e}")
    print(f"decreasing along the ladder: {report.decreasing}")
    return EXIT_SUCCESS
