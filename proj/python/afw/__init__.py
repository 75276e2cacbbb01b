"""Away-step Frank-Wolfe with active-set identification diagnostics."""

from ._core import (
    ConfigError,
    IoError,
    Objective,
    active_set_radius,
    exposed_face,
    extended_support,
    fw_gap,
    holder_epsilon,
    linear,
    lmo,
    local_basin_bound,
    multipliers,
    nonconvex_rate_bound,
    polytope_multipliers,
    quadratic,
    run_afw,
    run_afw_polytope,
    run_config,
    run_suite,
    strongly_convex_bound,
    suite_names,
)

__all__ = [
    "ConfigError",
    "IoError",
    "Objective",
    "active_set_radius",
    "exposed_face",
    "extended_support",
    "fw_gap",
    "holder_epsilon",
    "linear",
    "lmo",
    "local_basin_bound",
    "multipliers",
    "nonconvex_rate_bound",
    "polytope_multipliers",
    "quadratic",
    "run_afw",
    "run_afw_polytope",
    "run_config",
    "run_suite",
    "strongly_convex_bound",
    "suite_names",
]
