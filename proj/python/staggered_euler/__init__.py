"""Staggered residual-distribution solver for the 1D compressible Euler equations.

Thin wrapper over the C++ core. Configuration dicts use the same keys as the
command-line tool and the configuration files (see ``config_keys()``).
"""

from ._core import (
    ArgumentError,
    BlowUpError,
    ConfigError,
    IoError,
    PositivityError,
    basis_eval,
    bezier_value,
    builtin_cases,
    config_keys,
    convergence_study,
    exact_riemann,
    isentropic_exact,
    run_case,
    stability_matrix,
)

__all__ = [
    "ArgumentError",
    "BlowUpError",
    "ConfigError",
    "IoError",
    "PositivityError",
    "basis_eval",
    "bezier_value",
    "builtin_cases",
    "config_keys",
    "convergence_study",
    "exact_riemann",
    "isentropic_exact",
    "run_case",
    "stability_matrix",
]
