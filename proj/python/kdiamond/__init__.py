"""Broken k-diamond partitions: exact coefficients, Rademacher series, Turan checks."""

from ._kdiamond import (
    InapplicableError,
    applicable,
    audit_ratio,
    audit_sandwich,
    audit_tail_sum,
    audit_x_threshold,
    count_distinct_real_roots,
    delta_coeffs,
    eta_quotient_coeffs,
    is_hyperbolic,
    jensen,
    log_concave_at,
    multiplicative_violations,
    partition_coeffs,
    run_cli,
    scan,
    turan3_at,
    verify,
)

__all__ = [
    "InapplicableError",
    "applicable",
    "audit_ratio",
    "audit_sandwich",
    "audit_tail_sum",
    "audit_x_threshold",
    "count_distinct_real_roots",
    "delta_coeffs",
    "eta_quotient_coeffs",
    "is_hyperbolic",
    "jensen",
    "log_concave_at",
    "multiplicative_violations",
    "partition_coeffs",
    "run_cli",
    "scan",
    "turan3_at",
    "verify",
]
