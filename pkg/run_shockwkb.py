#!/usr/bin/env python
"""
shockwkb entry point.

Usage:
    # Condition report
    python run_shockwkb.py check --config config/example_config.yaml

    # Figure grids for Y_1
    python run_shockwkb.py build --config config/example_config.yaml --order 1 --out output/figures

    # Whole worked example
    python run_shockwkb.py example --out output/example
"""

import sys

from shockwkb.cli import main

if __name__ == "__main__":
    sys.exit(main())
