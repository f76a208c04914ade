"""Euclidean space R^n."""

import math
from typing import Optional, Sequence

import numpy as np

from core.exceptions import DomainError, InvalidSpec
from core.geometry.base import (
    ExponentialChart,
    GeodesicSpace,
    Point,
    SpaceKind,
    vector_angle,
)
from core.spaces.convex import HalfSpace, Segment


class EuclideanSpace(GeodesicSpace, ExponentialChart):
    kind = SpaceKind.EUCLIDEAN

    def __init__(self, dimension: int):
        if dimension < 1:
            raise InvalidSpec(
                f"Euclidean dimension must be at least 1, got {dimension}",
                metadata={'dimension': dimension}
            )
        super().__init__(f"euclidean:{dimension}")
        self.dimension = dimension

    def point(self, values: Sequence[float]) -> Point:
        coords = tuple(float(v) for v in values)
        if len(coords) != self.dimension:
            raise DomainError(
                f"Expected {self.dimension} coordinates, got {len(coords)}",
                metadata={'coords': coords}
            )
        return Point(self.space_id, coords)

    def vector(self, p: Point) -> np.ndarray:
        return np.asarray(p.coords, dtype=float)

    def _from_vector(self, v: np.ndarray) -> Point:
        return Point(self.space_id, tuple(float(c) for c in v))

    def _distance(self, p: Point, q: Point) -> float:
        return float(np.linalg.norm(self.vector(p) - self.vector(q)))

    def _geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        a, b = self.vector(p), self.vector(q)
        return self._from_vector(a + t * (b - a))

    def _extend(self, p: Point, x: Point, s: float) -> Point:
        return self._geodesic_point(p, x, s)

    def exact_angle(self, p: Point, x: Point, y: Point) -> Optional[float]:
        base = self.vector(p)
        return vector_angle(self.vector(x) - base, self.vector(y) - base)

    def contains(self, p: Point) -> bool:
        return (
            p.space_id == self.space_id
            and len(p.coords) == self.dimension
            and all(math.isfinite(c) for c in p.coords)
        )

    def sample_point(self, rng: np.random.Generator, scale: float = 1.0) -> Point:
        return self._from_vector(rng.normal(0.0, scale, self.dimension))

    def parse_point(self, text: str) -> Point:
        try:
            values = [float(part) for part in text.split(",") if part.strip()]
        except ValueError as exc:
            raise DomainError(f"Cannot parse Euclidean point {text!r}") from exc
        return self.point(values)

    def tangent_frame(self, p: Point) -> np.ndarray:
        return np.eye(self.dimension)

    def exp_map(self, p: Point, coeffs: np.ndarray) -> Point:
        return self._from_vector(self.vector(p) + np.asarray(coeffs, dtype=float))

    def project_special(self, convex_set, x: Point) -> Optional[Point]:
        if isinstance(convex_set, HalfSpace):
            normal = np.asarray(convex_set.normal, dtype=float)
            if normal.shape != (self.dimension,):
                raise DomainError("Halfspace normal has the wrong dimension")
            z = self.vector(x)
            excess = float(normal @ z) - convex_set.offset
            if excess <= 0.0:
                return x
            return self._from_vector(z - excess / float(normal @ normal) * normal)

        if isinstance(convex_set, Segment):
            a, b = self.vector(convex_set.start), self.vector(convex_set.end)
            direction = b - a
            length_sq = float(direction @ direction)
            if length_sq == 0.0:
                return convex_set.start
            t = float((self.vector(x) - a) @ direction) / length_sq
            return self.geodesic_point(convex_set.start, convex_set.end, min(1.0, max(0.0, t)))

        return None
