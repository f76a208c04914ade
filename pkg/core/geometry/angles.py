"""
Comparison and Alexandrov angles.

The Alexandrov angle uses the owning space's closed form when one exists and
otherwise extrapolates comparison angles taken on a shrinking geometric grid
of arc lengths along both geodesics.
"""

import logging
import math
from typing import List, Sequence, Tuple

from config.settings import settings
from core.exceptions import ZeroDirection
from core.geometry.base import AngleMethod, AngleResult, GeodesicSpace, Point

logger = logging.getLogger(__name__)


def comparison_angle(space: GeodesicSpace, p: Point, q: Point, r: Point) -> AngleResult:
    dq = space.distance(p, q)
    dr = space.distance(p, r)
    dqr = space.distance(q, r)
    return AngleResult(_law_of_cosines(dq, dr, dqr), AngleMethod.EXACT)


def _law_of_cosines(a: float, b: float, c: float) -> float:
    if a == 0.0 and b == 0.0:
        return 0.0
    if a == 0.0 or b == 0.0:
        return math.pi / 2
    cos_value = (a * a + b * b - c * c) / (2.0 * a * b)
    return math.acos(min(1.0, max(-1.0, cos_value)))


def alexandrov_angle(
    space: GeodesicSpace,
    p: Point,
    x: Point,
    y: Point,
    prefer_exact: bool = True,
) -> AngleResult:
    """
    Angle at p between the geodesics toward x and toward y.

    Args:
        prefer_exact: use the space's closed form when available. Turning it
            off forces the extrapolated comparison-limit estimate.

    Raises:
        ZeroDirection: if x or y coincides with p
    """
    if space.same(p, x) or space.same(p, y):
        raise ZeroDirection(
            "Alexandrov angle needs nonzero directions",
            metadata={'space': space.space_id}
        )
    if x == y:
        return AngleResult(0.0, AngleMethod.EXACT)

    if prefer_exact:
        exact = space.exact_angle(p, x, y)
        if exact is not None:
            return AngleResult(exact, AngleMethod.EXACT)

    return _extrapolated_angle(space, p, x, y)


def _extrapolated_angle(space: GeodesicSpace, p: Point, x: Point, y: Point) -> AngleResult:
    dx = space.distance(p, x)
    dy = space.distance(p, y)
    ratio = settings.angle_ratio
    scale = settings.angle_scale * min(dx, dy)

    angles = []
    for level in range(settings.angle_levels):
        s = scale * ratio ** level
        qx = space.geodesic_point(p, x, s / dx)
        qy = space.geodesic_point(p, y, s / dy)
        angles.append(comparison_angle(space, p, qx, qy).radians)

    last, previous = angles[-1], angles[-2]
    # first-order error model a(s) = alpha + c*s on the last two levels
    extrapolated = (last - ratio * previous) / (1.0 - ratio)
    logger.debug(f"Extrapolated angle {extrapolated:.6g} from levels {last:.6g}, {previous:.6g}")
    return AngleResult(
        extrapolated,
        AngleMethod.EXTRAPOLATED,
        estimated_error=abs(last - previous),
    )


def comparison_angle_profile(
    space: GeodesicSpace,
    p: Point,
    x: Point,
    y: Point,
    scales: Sequence[float],
) -> List[Tuple[float, float]]:
    """Comparison angles at p between gamma_{p,x}(s) and gamma_{p,y}(s) for each s"""
    profile = []
    for s in scales:
        qx = space.geodesic_point(p, x, s)
        qy = space.geodesic_point(p, y, s)
        profile.append((float(s), comparison_angle(space, p, qx, qy).radians))
    return profile


def first_variation_residual(
    space: GeodesicSpace,
    p: Point,
    u: Point,
    x: Point,
    s: float,
) -> float:
    """
    Difference quotient of the distance to u along the unit-speed geodesic
    from p toward x, minus the cosine of the angle at p between u and x.
    Tends to 0 as s shrinks.
    """
    dx = space.distance(p, x)
    if dx == 0.0:
        raise ZeroDirection("First variation needs x different from p")
    moved = space.geodesic_point(p, x, min(1.0, s / dx))
    quotient = (space.distance(u, p) - space.distance(u, moved)) / s
    angle = alexandrov_angle(space, p, u, x).radians
    return quotient - math.cos(angle)
