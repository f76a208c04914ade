"""
Semigroup generation through the exponential formula

S(t)x = lim_k J_{t/k}^k x, with the quantitative estimate
rho(J_{t/k}^k x, S(t)x) <= |Ax| 2t / sqrt(k) for x in dom A.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import settings
from core.exceptions import DomainError, NoNormBound, ScheduleError, TargetUnreachable
from core.fields.base import MonotoneField
from core.fields.monotonicity import field_min_norm
from core.geometry.base import Point
from core.semigroup.dto import (
    DoubleSeqResult,
    DoubleSeqRow,
    ErrorRow,
    ErrorTable,
    FlowRequest,
    Trajectory,
)

logger = logging.getLogger(__name__)

UNIFORMITY_POINTS = 21


def exp_formula(field: MonotoneField, x: Point, t: float, k: int, tol: Optional[float] = None) -> Point:
    """J_{t/k} applied k times to x; t = 0 returns x"""
    if t < 0:
        raise DomainError(f"Flow time must be nonnegative, got {t}")
    if k < 1:
        raise DomainError(f"Step count must be positive, got {k}")
    field.space._check(x)
    if t == 0.0:
        return x
    lam = t / k
    z = x
    for _ in range(k):
        z = field.resolvent(lam, z, tol=tol)
    return z


def error_bound(min_norm: float, t: float, k: int) -> float:
    """|Ax| 2t / sqrt(k)"""
    if t == 0.0 or min_norm == 0.0:
        return 0.0
    return min_norm * 2.0 * t / math.sqrt(k)


def _norm_at(field: MonotoneField, x: Point, norm_bound: Optional[float]) -> float:
    if norm_bound is not None:
        return float(norm_bound)
    if field.min_norm_oracle is None:
        raise NoNormBound(
            f"Field {field.name} has no minimal-norm oracle and no bound was supplied",
            metadata={'field': field.name}
        )
    return field_min_norm(field, x)


def adaptive_steps(min_norm: float, t: float, target_tol: float) -> int:
    """Smallest power of two k with |Ax| 2t/sqrt(k) <= target_tol, capped"""
    if not target_tol > 0:
        raise DomainError(f"Target tolerance must be positive, got {target_tol}")
    k = 1
    while error_bound(min_norm, t, k) > target_tol:
        if k >= settings.max_flow_steps:
            logger.warning(
                f"Step count capped at {settings.max_flow_steps}; "
                f"bound {error_bound(min_norm, t, k):.3e} exceeds target {target_tol:.3e}"
            )
            return settings.max_flow_steps
        k *= 2
    return k


def semigroup(
    field: MonotoneField,
    x: Point,
    t: float,
    target_tol: float,
    norm_bound: Optional[float] = None,
    strict: bool = False,
) -> Tuple[Point, int]:
    """
    S(t)x to within target_tol by the a priori estimate.

    Raises:
        NoNormBound: without an oracle or supplied bound, or when |Ax| is infinite
        TargetUnreachable: with strict=True, when the step cap leaves the bound above target_tol
    """
    if t < 0:
        raise DomainError(f"Flow time must be nonnegative, got {t}")
    if t == 0.0:
        return x, 1
    norm = _norm_at(field, x, norm_bound)
    if math.isinf(norm):
        raise NoNormBound("|Ax| is infinite at the starting point; x is outside dom A")
    if norm == 0.0:
        return x, 1
    k = adaptive_steps(norm, t, target_tol)
    bound = error_bound(norm, t, k)
    if strict and bound > target_tol:
        raise TargetUnreachable(
            f"Bound {bound:.3e} at the cap k={k} exceeds target {target_tol:.3e}",
            metadata={'t': t, 'k': k, 'bound': bound, 'target_tol': target_tol}
        )
    return exp_formula(field, x, t, k), k


def run_flow(request: FlowRequest) -> Tuple[Point, int]:
    if request.adaptive:
        return semigroup(
            request.field, request.x0, request.t, request.target_tol, request.norm_bound, strict=request.strict
        )
    return exp_formula(request.field, request.x0, request.t, request.k), request.k


# ----------------------------------------------------------------------
# Error tables and Cauchy-type checks
# ----------------------------------------------------------------------

def error_table(
    field: MonotoneField,
    x: Point,
    t: float,
    ks: Sequence[int],
    k_ref: Optional[int] = None,
    workers: int = 1,
    norm_bound: Optional[float] = None,
) -> ErrorTable:
    """
    Rows (k, rho(J_{t/k}^k x, S_ref), |Ax| 2t/sqrt(k)) against the reference
    iterate at k_ref; rows are independent and assembled in k order.
    """
    k_ref = k_ref or settings.reference_steps
    if any(k < 1 for k in ks):
        raise DomainError("Step counts must be positive")
    norm = norm_bound if norm_bound is not None else field_min_norm(field, x)
    reference = exp_formula(field, x, t, k_ref)
    reference_bound = error_bound(norm, t, k_ref)

    def row(k: int) -> ErrorRow:
        approx = exp_formula(field, x, t, k)
        return ErrorRow(
            k=k,
            error=field.space.distance(approx, reference),
            bound=error_bound(norm, t, k),
            slack=reference_bound + 1e-8,
        )

    ordered = sorted(ks)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, ordered))
    else:
        rows = [row(k) for k in ordered]

    table = ErrorTable(
        t=t,
        field_name=field.name,
        space_id=field.space.space_id,
        k_ref=k_ref,
        min_norm=norm,
        reference_bound=reference_bound,
        rows=rows,
    )
    logger.info(f"Error table for {field.name} at t={t}: {len(rows)} rows, passed={table.passed}")
    return table


def cauchy_residual(field: MonotoneField, x: Point, t: float, k: int) -> float:
    """rho(J_{t/2k}^{2k} x, J_{t/k}^k x)"""
    return field.space.distance(exp_formula(field, x, t, 2 * k), exp_formula(field, x, t, k))


def uniformity_scan(
    field: MonotoneField,
    x: Point,
    horizon: float,
    k: int,
    n_points: int = UNIFORMITY_POINTS,
    k_ref: Optional[int] = None,
) -> List[Tuple[float, float]]:
    """(t, error at fixed k) over an equispaced grid on [0, horizon]"""
    k_ref = k_ref or settings.reference_steps
    rows = []
    for t in np.linspace(0.0, horizon, n_points):
        t = float(t)
        reference = exp_formula(field, x, t, k_ref)
        rows.append((t, field.space.distance(exp_formula(field, x, t, k), reference)))
    return rows


def flow_nonexpansive_residual(field: MonotoneField, x: Point, y: Point, t: float, k: int) -> float:
    """rho(x, y) - rho(S_k(t)x, S_k(t)y)"""
    space = field.space
    return space.distance(x, y) - space.distance(exp_formula(field, x, t, k), exp_formula(field, y, t, k))


def composition_residual(field: MonotoneField, x: Point, t: float, k: int, n: int) -> float:
    """rho(J_{nt/nk}^{nk} x, (J_{t/k}^k)^n x); both apply the same resolvent nk times"""
    direct = exp_formula(field, x, n * t, n * k)
    composed = x
    for _ in range(n):
        composed = exp_formula(field, composed, t, k)
    return field.space.distance(direct, composed)


def semigroup_law_residual(field: MonotoneField, x: Point, s: float, t: float, k_ref: int) -> float:
    """rho(S(s+t)x, S(s)S(t)x) with every S evaluated at k_ref steps"""
    space = field.space
    combined = exp_formula(field, x, s + t, k_ref)
    staged = exp_formula(field, exp_formula(field, x, t, k_ref), s, k_ref)
    return space.distance(combined, staged)


def semigroup_law_bound(min_norm: float, s: float, t: float, k_ref: int) -> float:
    return (
        error_bound(min_norm, s + t, k_ref)
        + error_bound(min_norm, s, k_ref)
        + error_bound(min_norm, t, k_ref)
    )


# ----------------------------------------------------------------------
# Double-sequence estimate
# ----------------------------------------------------------------------

def _check_mu(lam: float, mu_schedule: Sequence[float]) -> None:
    if not lam > 0:
        raise ScheduleError(f"lambda must be positive, got {lam}")
    for index, mu in enumerate(mu_schedule):
        if not 0.0 < mu <= lam:
            raise ScheduleError(
                f"Step mu_{index + 1}={mu} lies outside (0, {lam}]",
                metadata={'index': index + 1, 'mu': mu, 'lambda': lam}
            )


def double_seq_bound(lam: float, mu_schedule: Sequence[float], j: int, k: int) -> float:
    """
    sqrt((k lam - t_j)^2 + k lam^2) + sqrt((k lam - t_j)^2 + lam t_j)
    with t_j the sum of the first j steps.
    """
    _check_mu(lam, mu_schedule)
    if j > len(mu_schedule) or j < 0 or k < 0:
        raise DomainError(f"Indices j={j}, k={k} outside the schedule of length {len(mu_schedule)}")
    t_j = float(sum(mu_schedule[:j]))
    gap = k * lam - t_j
    return math.sqrt(gap * gap + k * lam * lam) + math.sqrt(gap * gap + lam * t_j)


def double_seq_verify(
    field: MonotoneField,
    x: Point,
    lam: float,
    mu_schedule: Sequence[float],
    j_max: int,
    k_max: int,
    norm_bound: Optional[float] = None,
) -> DoubleSeqResult:
    """
    Compare A~_{j,k} = rho(J_{mu_j}...J_{mu_1}x, J_lam^k x) with
    |Ax| times the double-sequence bound on the grid 0..j_max x 0..k_max.
    """
    _check_mu(lam, mu_schedule)
    if j_max > len(mu_schedule):
        raise ScheduleError(f"Schedule has {len(mu_schedule)} steps, grid needs {j_max}")
    norm = norm_bound if norm_bound is not None else field_min_norm(field, x)
    space = field.space

    left = [x]
    for mu in mu_schedule[:j_max]:
        left.append(field.resolvent(mu, left[-1]))
    right = [x]
    for _ in range(k_max):
        right.append(field.resolvent(lam, right[-1]))

    result = DoubleSeqResult(lam=lam, min_norm=norm)
    for j in range(j_max + 1):
        for k in range(k_max + 1):
            a_tilde = space.distance(left[j], right[k])
            bound = norm * double_seq_bound(lam, mu_schedule, j, k) if norm > 0 else 0.0
            result.rows.append(DoubleSeqRow(j=j, k=k, a_tilde=a_tilde, bound=bound))
    return result


# ----------------------------------------------------------------------
# Trajectories
# ----------------------------------------------------------------------

def trajectory(
    field: MonotoneField,
    x: Point,
    times: Sequence[float],
    target_tol: float,
    norm_bound: Optional[float] = None,
) -> Trajectory:
    """S(t_i)x for increasing times, each with its own adaptive step count"""
    times = [float(t) for t in times]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise DomainError("Trajectory times must be strictly increasing")
    norm = _norm_at(field, x, norm_bound) if any(t > 0 for t in times) else 0.0
    points, ks, bounds = [], [], []
    for t in times:
        point, k = semigroup(field, x, t, target_tol, norm_bound)
        points.append(point)
        ks.append(k)
        bounds.append(error_bound(norm, t, k))

    reference = None
    distances: List[float] = []
    if field.has_zero_set:
        reference = field.nearest_zero(x)
        distances = [field.space.distance(reference, p) for p in points]
    return Trajectory(
        times=times,
        points=points,
        k_used=ks,
        reference=reference,
        distances=distances,
        bounds=bounds,
        target_tol=target_tol,
    )
