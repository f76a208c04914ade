"""Residuals of the CAT(0) characterizing inequalities (RHS - LHS, >= 0 when they hold)."""

from core.exceptions import DomainError
from core.geometry.base import GeodesicSegment, GeodesicSpace, Point


def cn_residual(space: GeodesicSpace, geodesic: GeodesicSegment, v: Point, t: float) -> float:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"CN parameter must lie in [0, 1], got {t}")
    x, y = geodesic.start, geodesic.end
    middle = space.geodesic_point(x, y, t)
    lhs = space.distance(middle, v) ** 2
    rhs = (
        (1.0 - t) * space.distance(x, v) ** 2
        + t * space.distance(y, v) ** 2
        - t * (1.0 - t) * geodesic.length ** 2
    )
    return rhs - lhs


def quad_residual(space: GeodesicSpace, x: Point, y: Point, u: Point, v: Point) -> float:
    lhs = space.distance(x, v) ** 2 + space.distance(y, u) ** 2
    rhs = (
        space.distance(x, u) ** 2
        + space.distance(y, v) ** 2
        + 2.0 * space.distance(x, y) * space.distance(u, v)
    )
    return rhs - lhs
