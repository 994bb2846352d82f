from ._tswave import (
    DomainError,
    FlowParams,
    NumericalError,
    ShearProfile,
    airy,
    airy_ratio,
    approx_mode,
    exact_mode,
    f_app,
    f_ref,
    mode_grid,
    resolvent,
    scan_k,
    solve_dispersion,
    validate_profile,
)

__all__ = [
    "DomainError",
    "FlowParams",
    "NumericalError",
    "ShearProfile",
    "airy",
    "airy_ratio",
    "approx_mode",
    "exact_mode",
    "f_app",
    "f_ref",
    "mode_grid",
    "resolvent",
    "scan_k",
    "solve_dispersion",
    "validate_profile",
]
