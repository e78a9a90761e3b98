"""
End-to-end run of the built-in worked example.

Output layout under the chosen directory:

    check.json
    figures/{u,V0,V1}_eps{0.9,0.25}.csv, figures/front_eps-independent.csv
    residual/residual_<region>_Y<order>.{json,csv}
    simulate/comparison_Y1.json, simulate/snapshot_Y1_eps<value>.csv
"""

import logging
from pathlib import Path

from shockwkb.constants import (
    DEFAULT_N_T,
    DEFAULT_N_TAU,
    EXIT_SUCCESS,
    REGION_GLOBAL,
    REGION_LEFT,
    REGION_RIGHT,
)
from shockwkb.example import (
    FIGURE_LADDER,
    QUICK_OVERRIDES,
    QUICK_RESIDUAL_SAMPLES,
    SIMULATION_LADDER,
    example_config,
)
from shockwkb.tools.condition_tools import cmd_check
from shockwkb.tools.field_tools import cmd_build
from shockwkb.tools.study_tools import cmd_residual, cmd_simulate

logger = logging.getLogger(__name__)

RESIDUAL_STUDIES = (
    (0, REGION_GLOBAL),
    (0, REGION_RIGHT),
    (1, REGION_GLOBAL),
    (1, REGION_RIGHT),
    (1, REGION_LEFT),
)


def cmd_example(out_dir: Path, quick: bool = False) -> int:
    """
    check -> build (eps 0.9, 0.25) -> residual -> simulate for the worked example.

    Args:
        out_dir: Output directory
        quick: Reduced grids for a fast smoke run
    """
    config = example_config(QUICK_OVERRIDES if quick else None)
    samples = QUICK_RESIDUAL_SAMPLES if quick else (DEFAULT_N_T, DEFAULT_N_TAU)
    out_dir = Path(out_dir)
    logger.info(f"Running the worked example into {out_dir} (quick={quick})")

    steps = [
        ("check", lambda: cmd_check(config, out_dir)),
        ("build", lambda: cmd_build(config, 1, out_dir / "figures", FIGURE_LADDER)),
    ]
    for order, region in RESIDUAL_STUDIES:
        steps.append(
            (
                f"residual {region} Y{order}",
                lambda order=order, region=region: cmd_residual(
                    config, order, region, out_dir / "residual", samples=samples
                ),
            )
        )
    steps.append(("simulate", lambda: cmd_simulate(config, 1, out_dir / "simulate", SIMULATION_LADDER)))

    for name, step in steps:
        print(f"== {name}")
        exit_code = step()
        if exit_code != EXIT_SUCCESS:
            logger.error(f"Example step '{name}' failed with exit code {exit_code}")
            return exit_code
    print(f"✅ Example written to {out_dir}")
    return EXIT_SUCCESS
