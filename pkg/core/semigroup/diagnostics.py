"""
Trajectory diagnostics: Fejer monotonicity, asymptotic centers of tail
windows and Delta-convergence reports.

The limsup in the asymptotic center is replaced by a max over the last
tail_fraction of the sequence, so every result here is a finite-sample
proxy.
"""

import itertools
import logging
import math
from typing import List, Optional, Sequence

from config.settings import settings
from core.exceptions import EmptyTail
from core.fields.base import MonotoneField
from core.geometry.base import GeodesicSpace, Point
from core.optimize import golden_section_minimize
from core.semigroup.dto import DeltaReport
from core.spaces.tree import TreeSpace

logger = logging.getLogger(__name__)

FEJER_SLACK = 1e-7
CENTER_TOLERANCE = 1e-4
STABILIZATION_TOLERANCE = 1e-4
ACTIVE_RELATIVE = 1e-9
MAX_DESCENT_ROUNDS = 500


def fejer_flags(distances: Sequence[float], slack: float = FEJER_SLACK) -> List[bool]:
    """One flag per step: True where the distance grew by more than slack"""
    return [b > a + slack for a, b in zip(distances, distances[1:])]


def tail_window(points: Sequence[Point], tail_fraction: Optional[float] = None) -> List[Point]:
    fraction = tail_fraction if tail_fraction is not None else settings.tail_fraction
    if not 0.0 < fraction <= 1.0:
        raise EmptyTail(f"Tail fraction must lie in (0, 1], got {fraction}")
    count = int(math.ceil(len(points) * fraction))
    tail = list(points[len(points) - count:]) if count else []
    if len(tail) < 2:
        raise EmptyTail(
            f"Tail window holds {len(tail)} points; at least 2 are needed",
            metadata={'points': len(points), 'tail_fraction': fraction}
        )
    return tail


def tail_radius(space: GeodesicSpace, tail: Sequence[Point], z: Point) -> float:
    """max_k rho(z, x^k) over the tail"""
    return max(space.distance(z, p) for p in tail)


def asymptotic_center(
    space: GeodesicSpace,
    points: Sequence[Point],
    tail_fraction: Optional[float] = None,
) -> Point:
    """
    Minimizer of the tail radius. Trees are searched edge by edge; other
    spaces use geodesic line searches toward the farthest tail points and
    midpoints of active pairs, restarted from each tail point
    (settings.center_restarts caps the number of restarts when set).
    """
    tail = tail_window(points, tail_fraction)

    def objective(z: Point) -> float:
        return tail_radius(space, tail, z)

    if isinstance(space, TreeSpace):
        candidates = [_tree_center(space, objective)]
    else:
        restarts = settings.center_restarts or len(tail)
        stride = max(1, len(tail) // restarts)
        starts = tail[::stride][:restarts]
        candidates = [_descend(space, tail, objective, start) for start in starts]

    # never worse than the best tail point
    candidates.extend(tail)
    return min(candidates, key=objective)


def _tree_center(space: TreeSpace, objective) -> Point:
    best_point, best_value = None, math.inf
    for key in space.edges:
        offset, value = golden_section_minimize(
            lambda o, key=key: objective(space._canonical(key, o)),
            0.0,
            space.edge_length(key),
            tol=settings.golden_tol,
        )
        if value < best_value:
            best_point, best_value = space._canonical(key, offset), value
    return best_point


def _line_search(space: GeodesicSpace, objective, start: Point, toward: Point):
    if space.same(start, toward):
        return start, objective(start)
    t, value = golden_section_minimize(
        lambda s: objective(space.geodesic_point(start, toward, s)),
        0.0,
        1.0,
        tol=settings.golden_tol,
    )
    return space.geodesic_point(start, toward, t), value


def _descend(space: GeodesicSpace, tail: Sequence[Point], objective, start: Point) -> Point:
    current, value = start, objective(start)
    for _ in range(MAX_DESCENT_ROUNDS):
        distances = [space.distance(current, p) for p in tail]
        radius = max(distances)
        active = [p for p, d in zip(tail, distances) if d >= radius * (1.0 - ACTIVE_RELATIVE)]
        targets = list(active)
        targets += [space.geodesic_point(a, b, 0.5) for a, b in itertools.combinations(active[:8], 2)]

        best_point, best_value = current, value
        for target in targets:
            point, candidate = _line_search(space, objective, current, target)
            if candidate < best_value:
                best_point, best_value = point, candidate
        if best_value >= value - 1e-15:
            break
        current, value = best_point, best_value
    return current


def opial_margin(space: GeodesicSpace, tail: Sequence[Point], center: Point, other: Point) -> float:
    """Tail radius at other minus tail radius at the center; positive for other != center"""
    return tail_radius(space, tail, other) - tail_radius(space, tail, center)


def delta_convergence_check(
    space: GeodesicSpace,
    points: Sequence[Point],
    candidate: Point,
    field: Optional[MonotoneField] = None,
    anchor: Optional[Point] = None,
    tail_fraction: Optional[float] = None,
) -> DeltaReport:
    """
    Compare the tail's asymptotic center with a candidate limit.

    The report passes when the center lies within 1e-4 of the candidate.
    Distances to anchor (default: the candidate) feed the Fejer flags and
    the Kadec-Klee stabilization check. With a field, the center's
    resolvent residual rho(c, J_1 c) and the tail's rho(x^k, J_1 x^k) are
    reported as evidence that Delta-limits are zeros.
    """
    tail = tail_window(points, tail_fraction)
    center = asymptotic_center(space, points, tail_fraction)
    anchor = anchor if anchor is not None else candidate

    all_distances = [space.distance(anchor, p) for p in points]
    tail_distances = all_distances[len(points) - len(tail):]
    spread = max(tail_distances) - min(tail_distances)
    center_distance = space.distance(center, candidate)

    report = DeltaReport(
        center=center,
        candidate=candidate,
        center_distance=center_distance,
        tail_radius=tail_radius(space, tail, center),
        radius_spread=spread,
        stabilized=spread <= STABILIZATION_TOLERANCE,
        fejer_violations=fejer_flags(all_distances),
        passed=center_distance <= CENTER_TOLERANCE,
    )
    if field is not None:
        report.center_resolvent_residual = space.distance(center, field.resolvent(1.0, center))
        report.demiclosedness_residuals = [space.distance(p, field.resolvent(1.0, p)) for p in tail]

    logger.info(
        f"Delta check: center distance {center_distance:.3e}, "
        f"passed={report.passed}, stabilized={report.stabilized}"
    )
    return report
