"""Certified-error trapezoidal and midpoint cubature on rectangles."""

from ._certquad import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    Error,
    Integrand,
    MismatchError,
    ParseError,
    Rectangle,
    RegistryError,
    apply_rule,
    conjugate,
    holder_coefficient,
    make_integrand,
    min_phi_norm_value,
    oracle_integrate,
    parts_identity_residual,
    phi_norm_closed,
    phi_norm_numeric,
    registry_names,
    run_cli,
    search_min,
    uniform_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
