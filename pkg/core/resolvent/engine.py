"""
Resolvent Engine

Uniform access to J_lam for any monotone field plus the residual checks of
its structural properties: nonexpansiveness, firm nonexpansiveness, the
resolvent identity, Yosida norms and both asymptotic limits in lam.
"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from core.exceptions import DomainError, NoZeroSet, ScheduleError
from core.fields.base import MonotoneField
from core.fields.monotonicity import field_min_norm
from core.geometry.base import GeodesicSpace, Point
from core.geometry.tangent import negative_direction, tangent_inner, tangent_vector
from core.resolvent.dto import (
    ContinuityRow,
    DomainProbe,
    LimitScan,
    ResolventConfig,
    ScanMode,
    ScanRow,
    YosidaVec,
)

logger = logging.getLogger(__name__)

DEFAULT_PROFILE_POINTS = 11
LamOrConfig = Union[float, ResolventConfig]


def _config(lam_or_cfg: LamOrConfig) -> ResolventConfig:
    if isinstance(lam_or_cfg, ResolventConfig):
        return lam_or_cfg
    try:
        return ResolventConfig(lam=lam_or_cfg)
    except ValidationError as exc:
        raise DomainError(f"Invalid resolvent parameter {lam_or_cfg!r}", metadata={'lambda': lam_or_cfg}) from exc


def resolvent(field: MonotoneField, cfg: LamOrConfig, x: Point) -> Point:
    """J_lam x; lam = 0 is the identity"""
    cfg = _config(cfg)
    field.space._check(x)
    if cfg.lam == 0.0:
        return x
    return field.resolvent(cfg.lam, x, tol=cfg.tol, max_iter=cfg.max_iter)


def resolvent_power(field: MonotoneField, cfg: LamOrConfig, x: Point, k: int) -> Point:
    """J_lam applied k times"""
    cfg = _config(cfg)
    z = x
    for _ in range(k):
        z = resolvent(field, cfg, z)
    return z


# ----------------------------------------------------------------------
# Structural residuals
# ----------------------------------------------------------------------

def nonexpansive_residual(field: MonotoneField, lam: LamOrConfig, x: Point, y: Point) -> float:
    """rho(x, y) - rho(J x, J y); >= 0 for resolvents"""
    space = field.space
    return space.distance(x, y) - space.distance(resolvent(field, lam, x), resolvent(field, lam, y))


def firm_inequality_residual(field: MonotoneField, lam: LamOrConfig, x: Point, y: Point) -> float:
    """
    rho^2(x, Jy) + rho^2(y, Jx) - rho^2(Jx, x) - rho^2(Jy, y) - 2 rho^2(Jx, Jy);
    >= 0 for firmly nonexpansive maps.
    """
    space = field.space
    jx = resolvent(field, lam, x)
    jy = resolvent(field, lam, y)
    return (
        space.distance(x, jy) ** 2
        + space.distance(y, jx) ** 2
        - space.distance(jx, x) ** 2
        - space.distance(jy, y) ** 2
        - 2.0 * space.distance(jx, jy) ** 2
    )


def fixed_point_residual(field: MonotoneField, lam: LamOrConfig, z: Point) -> float:
    """rho(z, J_lam z); zero exactly on A^-1(0)"""
    return field.space.distance(z, resolvent(field, lam, z))


def resolvent_identity_residual(field: MonotoneField, lam: float, mu: float, x: Point,
                                tol: Optional[float] = None) -> float:
    """rho(J_lam x, J_mu u) with u = gamma_{J_lam x, x}(mu/lam)"""
    if not 0.0 < mu <= lam:
        raise DomainError(
            f"Resolvent identity needs 0 < mu <= lam, got mu={mu}, lam={lam}",
            metadata={'mu': mu, 'lambda': lam}
        )
    space = field.space
    cfg_lam = ResolventConfig(lam=lam, tol=tol) if tol else ResolventConfig(lam=lam)
    cfg_mu = ResolventConfig(lam=mu, tol=cfg_lam.tol)
    j_lam = resolvent(field, cfg_lam, x)
    u = space.geodesic_point(j_lam, x, mu / lam)
    return space.distance(j_lam, resolvent(field, cfg_mu, u))


def firm_nonexpansiveness_profile(
    field: MonotoneField,
    lam: LamOrConfig,
    x: Point,
    y: Point,
    grid: Optional[Sequence[float]] = None,
) -> List[Tuple[float, float]]:
    """
    phi(t) = rho(gamma_{x,Jx}(t), gamma_{y,Jy}(t)) on the grid;
    nonincreasing for firmly nonexpansive resolvents.
    """
    if grid is None:
        grid = np.linspace(0.0, 1.0, DEFAULT_PROFILE_POINTS)
    grid = [float(t) for t in grid]
    if any(b < a for a, b in zip(grid, grid[1:])) or grid[0] != 0.0 or grid[-1] != 1.0:
        raise DomainError("Profile grid must be sorted and contain 0 and 1")
    space = field.space
    jx = resolvent(field, lam, x)
    jy = resolvent(field, lam, y)
    return [
        (t, space.distance(space.geodesic_point(x, jx, t), space.geodesic_point(y, jy, t)))
        for t in grid
    ]


def negative_geodesic_residual(space: GeodesicSpace, p: Point, x: Point, q: Point) -> float:
    """
    -g_p(gamma_{p,x}, gamma_{p,q}) - g_p(-gamma_{p,x}, gamma_{p,q}); >= 0
    wherever the negative geodesic exists.
    """
    if space.same(p, q):
        return 0.0
    forward = tangent_vector(space, p, x)
    toward_q = tangent_vector(space, p, q)
    backward = negative_direction(space, p, x)
    return -tangent_inner(forward, toward_q) - tangent_inner(backward, toward_q)


# ----------------------------------------------------------------------
# Yosida approximation
# ----------------------------------------------------------------------

def yosida(field: MonotoneField, lam: float, x: Point) -> YosidaVec:
    """
    A_lam x = lam^-1 rho(x, J_lam x)(-gamma_{x, J_lam x}).

    Raises:
        NoExtension: if the negative geodesic at x does not exist
    """
    if not lam > 0:
        raise DomainError(f"Yosida approximation needs lam > 0, got {lam}")
    space = field.space
    j = resolvent(field, lam, x)
    if space.same(x, j):
        return YosidaVec(base=x, scale=0.0, witness=x, zero=True, space=space, norm_value=0.0, lam=lam)
    norm_value = space.distance(x, j) / lam
    witness = space.extend_geodesic(x, j, -1.0)
    return YosidaVec(
        base=x,
        scale=norm_value,
        witness=witness,
        zero=False,
        space=space,
        norm_value=norm_value,
        lam=lam,
    )


def yosida_bound_residual(field: MonotoneField, lam: float, x: Point) -> float:
    """|Ax| - ||A_lam x||; >= 0 by the Yosida norm bound"""
    return field_min_norm(field, x) - yosida(field, lam, x).norm_value


# ----------------------------------------------------------------------
# Limits and continuity in lam
# ----------------------------------------------------------------------

def _check_schedule(schedule: Sequence[float], decreasing: bool) -> List[float]:
    values = [float(v) for v in schedule]
    if not values or any(v <= 0 for v in values):
        raise ScheduleError("Lambda schedule must be nonempty and positive")
    pairs = zip(values, values[1:])
    ordered = all(b < a for a, b in pairs) if decreasing else all(b > a for a, b in pairs)
    if not ordered:
        direction = "decreasing" if decreasing else "increasing"
        raise ScheduleError(f"Lambda schedule must be strictly {direction}", metadata={'schedule': values})
    return values


def _scan(field: MonotoneField, x: Point, schedule: List[float], target: Optional[Point]) -> LimitScan:
    space = field.space
    points = [resolvent(field, lam, x) for lam in schedule]
    if target is not None:
        rows = [ScanRow(lam, space.distance(p, target)) for lam, p in zip(schedule, points)]
        return LimitScan(ScanMode.REFERENCE, points[-1], rows, target)
    rows = [
        ScanRow(lam, space.distance(p, prev))
        for lam, p, prev in zip(schedule[1:], points[1:], points)
    ]
    return LimitScan(ScanMode.CAUCHY, points[-1], rows, None)


def resolvent_limit_zero(field: MonotoneField, x: Point, schedule: Sequence[float]) -> LimitScan:
    """
    J_lam x as lam decreases to 0 tends to the projection onto the closure
    of the domain. Fields without a domain witness get Cauchy increments.
    """
    values = _check_schedule(schedule, decreasing=True)
    target = field.domain_closure_projection(x) if field.has_domain_witness else None
    scan = _scan(field, x, values, target)
    logger.debug(f"Zero-limit scan for {field.name}: mode={scan.mode.value}, final={scan.final_distance:.3e}")
    return scan


def resolvent_limit_infinity(field: MonotoneField, x: Point, schedule: Sequence[float],
                             strict: bool = True) -> LimitScan:
    """
    J_lam x as lam grows tends to the projection onto A^-1(0).

    Raises:
        NoZeroSet: if strict and the field has no zero-set witness
    """
    values = _check_schedule(schedule, decreasing=False)
    if not field.has_zero_set:
        if strict:
            raise NoZeroSet(
                f"Field {field.name} has no zero-set witness for the large-lambda limit",
                metadata={'field': field.name}
            )
        return _scan(field, x, values, None)
    return _scan(field, x, values, field.nearest_zero(x))


def resolvent_continuity_scan(field: MonotoneField, x: Point, interval: Tuple[float, float],
                              steps: int) -> List[ContinuityRow]:
    """Consecutive grid pairs mu < lam with the estimate (1 - mu/lam) rho(x, J_lam x)"""
    a, b = interval
    if a < 0 or b < a or steps < 1:
        raise DomainError(f"Bad continuity interval [{a}, {b}] with {steps} steps")
    space = field.space
    grid = [float(v) for v in np.linspace(a, b, steps + 1)]
    points = [resolvent(field, lam, x) for lam in grid]
    rows = []
    for (mu, j_mu), (lam, j_lam) in zip(zip(grid, points), zip(grid[1:], points[1:])):
        bound = (1.0 - mu / lam) * space.distance(x, j_lam) if lam > 0 else 0.0
        rows.append(ContinuityRow(mu=mu, lam=lam, distance=space.distance(j_mu, j_lam), bound=bound))
    return rows


def domain_convexity_probe(field: MonotoneField, x: Point, y: Point, lam: float = 1e-6) -> DomainProbe:
    """
    Residuals rho(z, J_lam z) at x, y and their midpoint; when the first two
    are small the third should be too, since the domain closure is convex.
    """
    midpoint = field.space.geodesic_point(x, y, 0.5)
    return DomainProbe(
        lam=lam,
        x_residual=fixed_point_residual(field, lam, x),
        y_residual=fixed_point_residual(field, lam, y),
        midpoint_residual=fixed_point_residual(field, lam, midpoint),
    )
