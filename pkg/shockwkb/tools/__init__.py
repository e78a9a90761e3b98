"""
Command implementations for the shockwkb CLI.

Each cmd_* function takes validated inputs and returns an exit code.
"""

from shockwkb.tools.condition_tools import check_conditions, cmd_check
from shockwkb.tools.example_tools import cmd_example
from shockwkb.tools.field_tools import cmd_build
from shockwkb.tools.study_tools import cmd_residual, cmd_simulate

__all__ = [
    "check_conditions",
    "cmd_build",
    "cmd_check",
    "cmd_example",
    "cmd_residual",
    "cmd_simulate",
]
