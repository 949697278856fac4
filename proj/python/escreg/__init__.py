"""Extremum-seeking output regulator toolkit.

Thin wrapper over the C++ core: internal-model construction, the harmonic
steady-state oracle, Lie-bracket averaging checks, and closed-loop simulation.
"""

from ._core import (
    ConfigError,
    DegenerateRow,
    DuplicateFrequency,
    IntegrationDiverged,
    InternalModel,
    NonFinite,
    Scenario,
    SingularMatrix,
    build_T,
    bump_psi,
    charpoly,
    chi,
    chi_s,
    companion,
    eig_imaginary_distinct,
    error_view,
    integrate,
    internal_model,
    is_hurwitz,
    load_scenario,
    lyapunov_solve,
    min_poly_coeffs,
    oracle_table,
    parse_scenario,
    persistent_excitation,
    routh_hurwitz_stable,
    run_sweep,
    solve_linear,
    ultimate_bound,
    verify_averaging,
)

__all__ = [
    "ConfigError",
    "DegenerateRow",
    "DuplicateFrequency",
    "IntegrationDiverged",
    "InternalModel",
    "NonFinite",
    "Scenario",
    "SingularMatrix",
    "build_T",
    "bump_psi",
    "charpoly",
    "chi",
    "chi_s",
    "companion",
    "eig_imaginary_distinct",
    "error_view",
    "integrate",
    "internal_model",
    "is_hurwitz",
    "load_scenario",
    "lyapunov_solve",
    "min_poly_coeffs",
    "oracle_table",
    "parse_scenario",
    "persistent_excitation",
    "routh_hurwitz_stable",
    "run_sweep",
    "solve_linear",
    "ultimate_bound",
    "verify_averaging",
]
