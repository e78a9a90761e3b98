"""
shockwkb - step-like asymptotic solutions of the singularly perturbed Burgers' equation.

Builds the main term Y0 and the first approximation Y1 of

    eps * u_xx = a(x, t, eps) * u_t + b(x, t, eps) * u * u_x

with coefficient series a = sum eps^k a_k, b = sum eps^k b_k, checks the
solvability conditions along the discontinuity curve, and verifies the
residual orders numerically.

Usage:
    from shockwkb.config import load_config
    from shockwkb.asymptotics import solve_front, build_frame, assemble

    problem = load_config("config/example_config.yaml").to_problem()
"""

__version__ = "0.1.0"
