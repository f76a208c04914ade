"""
Closed convex sets and metric projection onto them.

Spaces handle the set kinds they have closed forms for through
GeodesicSpace.project_special; balls and segments fall back to the
space-independent rules below.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Tuple

from config.settings import settings
from core.exceptions import DomainError, UnsupportedSet
from core.geometry.base import GeodesicSpace, Point
from core.optimize import golden_section_minimize

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-10


class ConvexSetKind(str, Enum):
    BALL = "ball"
    HALFSPACE = "halfspace"
    SUBTREE = "subtree"
    SEGMENT = "segment"
    PRODUCT = "product"


@dataclass(frozen=True)
class ConvexSet:
    kind: ClassVar[ConvexSetKind]

    def describe(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class Ball(ConvexSet):
    kind: ClassVar[ConvexSetKind] = ConvexSetKind.BALL
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise DomainError(f"Ball radius must be nonnegative, got {self.radius}")


@dataclass(frozen=True)
class HalfSpace(ConvexSet):
    """{z : <normal, z> <= offset} in R^n"""
    kind: ClassVar[ConvexSetKind] = ConvexSetKind.HALFSPACE
    normal: Tuple[float, ...]
    offset: float

    def __post_init__(self):
        if not any(c != 0.0 for c in self.normal):
            raise DomainError("Halfspace normal must be nonzero")


@dataclass(frozen=True)
class Subtree(ConvexSet):
    """Convex hull of a connected vertex set of a metric tree"""
    kind: ClassVar[ConvexSetKind] = ConvexSetKind.SUBTREE
    vertices: Tuple[str, ...]

    def __post_init__(self):
        if not self.vertices:
            raise DomainError("Subtree needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))


@dataclass(frozen=True)
class Segment(ConvexSet):
    kind: ClassVar[ConvexSetKind] = ConvexSetKind.SEGMENT
    start: Point
    end: Point


@dataclass(frozen=True)
class ProductSet(ConvexSet):
    kind: ClassVar[ConvexSetKind] = ConvexSetKind.PRODUCT
    first: ConvexSet
    second: ConvexSet


def project_convex(space: GeodesicSpace, convex_set: ConvexSet, x: Point) -> Point:
    """
    Metric projection of x onto convex_set.

    Raises:
        UnsupportedSet: if the space has no rule for this set kind
    """
    space._check(x)
    projected = space.project_special(convex_set, x)
    if projected is not None:
        return projected

    if isinstance(convex_set, Ball):
        space._check(convex_set.center)
        d = space.distance(convex_set.center, x)
        if d <= convex_set.radius:
            return x
        return space.geodesic_point(convex_set.center, x, convex_set.radius / d)

    if isinstance(convex_set, Segment):
        start, end = convex_set.start, convex_set.end
        space._check(start, end)
        if start == end:
            return start
        t, _ = golden_section_minimize(
            lambda s: space.distance(x, space.geodesic_point(start, end, s)),
            0.0,
            1.0,
            tol=settings.golden_tol,
        )
        return space.geodesic_point(start, end, t)

    raise UnsupportedSet(
        f"{space.kind.value} space cannot project onto a {convex_set.kind.value} set",
        metadata={'space': space.space_id, 'set': convex_set.kind.value}
    )


def set_contains(space: GeodesicSpace, convex_set: ConvexSet, x: Point, tol: float = MEMBERSHIP_TOL) -> bool:
    return space.distance(x, project_convex(space, convex_set, x)) <= tol


def projection_residual(space: GeodesicSpace, convex_set: ConvexSet, x: Point, w: Point) -> float:
    """rho^2(x,w) - rho^2(x,Px) - rho^2(Px,w); nonnegative for w in the set"""
    z = project_convex(space, convex_set, x)
    return (
        space.distance(x, w) ** 2
        - space.distance(x, z) ** 2
        - space.distance(z, w) ** 2
    )
