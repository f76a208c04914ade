"""Binary product of CAT(0) spaces with the l2 product metric."""

import math
from typing import Optional

import numpy as np

from core.exceptions import DomainError
from core.geometry.base import GeodesicSpace, Point, SpaceKind
from core.spaces.convex import ProductSet, project_convex


class ProductSpace(GeodesicSpace):
    kind = SpaceKind.PRODUCT

    def __init__(self, first: GeodesicSpace, second: GeodesicSpace):
        super().__init__(f"product({first.space_id},{second.space_id})")
        self.first = first
        self.second = second
        self.supports_extension = first.supports_extension and second.supports_extension

    def point(self, a: Point, b: Point) -> Point:
        self.first._check(a)
        self.second._check(b)
        return Point(self.space_id, (a, b))

    def factors(self, p: Point):
        return p.coords

    def _distance(self, p: Point, q: Point) -> float:
        (a1, b1), (a2, b2) = p.coords, q.coords
        return math.hypot(self.first.distance(a1, a2), self.second.distance(b1, b2))

    def _geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        (a1, b1), (a2, b2) = p.coords, q.coords
        return Point(self.space_id, (
            self.first.geodesic_point(a1, a2, t),
            self.second.geodesic_point(b1, b2, t),
        ))

    def _extend(self, p: Point, x: Point, s: float) -> Point:
        # a factor with zero displacement stays put along the whole line
        parts = []
        for space, base, target in zip((self.first, self.second), p.coords, x.coords):
            if space.same(base, target):
                parts.append(base)
            else:
                parts.append(space.extend_geodesic(base, target, s))
        return Point(self.space_id, tuple(parts))

    def exact_angle(self, p: Point, x: Point, y: Point) -> Optional[float]:
        """
        Angle between unit directions of the Euclidean cone product:
        each factor contributes the cone chord between its speed fractions.
        """
        dx = self._distance(p, x)
        dy = self._distance(p, y)
        chord_sq = 0.0
        for index, space in enumerate((self.first, self.second)):
            base, u, v = p.coords[index], x.coords[index], y.coords[index]
            cu = space.distance(base, u) / dx
            cv = space.distance(base, v) / dy
            if cu == 0.0 or cv == 0.0:
                chord_sq += cu * cu + cv * cv
                continue
            if u == v:
                angle = 0.0
            else:
                angle = space.exact_angle(base, u, v)
                if angle is None:
                    return None
            half = math.sin(angle / 2.0)
            chord_sq += (cu - cv) ** 2 + 4.0 * cu * cv * half * half
        return 2.0 * math.asin(min(1.0, math.sqrt(chord_sq) / 2.0))

    def contains(self, p: Point) -> bool:
        if p.space_id != self.space_id or not isinstance(p.coords, tuple) or len(p.coords) != 2:
            return False
        return self.first.contains(p.coords[0]) and self.second.contains(p.coords[1])

    def sample_point(self, rng: np.random.Generator, scale: float = 1.0) -> Point:
        return Point(self.space_id, (
            self.first.sample_point(rng, scale),
            self.second.sample_point(rng, scale),
        ))

    def parse_point(self, text: str) -> Point:
        """Factor points separated by '|', e.g. "0.5 | vertex:hub"."""
        left, sep, right = text.partition("|")
        if not sep:
            raise DomainError(f"Product point needs 'A | B', got {text!r}")
        return self.point(self.first.parse_point(left.strip()), self.second.parse_point(right.strip()))

    def project_special(self, convex_set, x: Point) -> Optional[Point]:
        if isinstance(convex_set, ProductSet):
            a, b = x.coords
            return Point(self.space_id, (
                project_convex(self.first, convex_set.first, a),
                project_convex(self.second, convex_set.second, b),
            ))
        return None
