"""
Resolvent engine: J_lam, Yosida approximations and their property checks.
"""

from core.resolvent.dto import (
    ContinuityRow,
    DomainProbe,
    LimitScan,
    ResolventConfig,
    ScanMode,
    ScanRow,
    YosidaVec,
)
from core.resolvent.engine import (
    domain_convexity_probe,
    firm_inequality_residual,
    firm_nonexpansiveness_profile,
    fixed_point_residual,
    negative_geodesic_residual,
    nonexpansive_residual,
    resolvent,
    resolvent_continuity_scan,
    resolvent_identity_residual,
    resolvent_limit_infinity,
    resolvent_limit_zero,
    resolvent_power,
    yosida,
    yosida_bound_residual,
)

__all__ = [
    'ContinuityRow',
    'DomainProbe',
    'LimitScan',
    'ResolventConfig',
    'ScanMode',
    'ScanRow',
    'YosidaVec',
    'domain_convexity_probe',
    'firm_inequality_residual',
    'firm_nonexpansiveness_profile',
    'fixed_point_residual',
    'negative_geodesic_residual',
    'nonexpansive_residual',
    'resolvent',
    'resolvent_continuity_scan',
    'resolvent_identity_residual',
    'resolvent_limit_infinity',
    'resolvent_limit_zero',
    'resolvent_power',
    'yosida',
    'yosida_bound_residual',
]
