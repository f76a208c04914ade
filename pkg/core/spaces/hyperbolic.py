"""
Hyperbolic space H^n in the hyperboloid model.

Points are (x_0, ..., x_{n-1}, x_n) with Minkowski form
<x, y> = sum_{i<n} x_i y_i - x_n y_n, <x, x> = -1 and x_n > 0.
Every constructed point is renormalized onto the hyperboloid.
"""

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
from core.spaces.convex import Segment

HYPERBOLOID_TOL = 1e-10


def minkowski_dot(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[:-1] @ v[:-1] - u[-1] * v[-1])


def boost_to_origin(p: np.ndarray) -> np.ndarray:
    """Lorentz boost mapping p to the origin (0, ..., 0, 1)"""
    spatial, time = p[:-1], p[-1]
    size = p.shape[0]
    radius_sq = float(spatial @ spatial)
    if radius_sq == 0.0:
        return np.eye(size)
    unit = spatial / math.sqrt(radius_sq)
    boost = np.eye(size)
    boost[:-1, :-1] += (time - 1.0) * np.outer(unit, unit)
    boost[:-1, -1] = -spatial
    boost[-1, :-1] = -spatial
    boost[-1, -1] = time
    return boost


class HyperbolicSpace(GeodesicSpace, ExponentialChart):
    kind = SpaceKind.HYPERBOLIC

    def __init__(self, dimension: int):
        if dimension < 1:
            raise InvalidSpec(
                f"Hyperbolic dimension must be at least 1, got {dimension}",
                metadata={'dimension': dimension}
            )
        super().__init__(f"hyperbolic:{dimension}")
        self.dimension = dimension

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def point(self, values: Sequence[float]) -> Point:
        """
        Build a point from n spatial coordinates (lifted onto the sheet)
        or from n+1 hyperboloid coordinates (validated).
        """
        v = np.asarray([float(c) for c in values], dtype=float)
        if v.shape[0] == self.dimension:
            return self.lift(v)
        if v.shape[0] == self.dimension + 1:
            if v[-1] <= 0 or abs(minkowski_dot(v, v) + 1.0) > 1e-9 * max(1.0, v[-1] ** 2):
                raise DomainError(
                    "Coordinates are not on the upper hyperboloid sheet",
                    metadata={'coords': tuple(v)}
                )
            return self._from_vector(v)
        raise DomainError(
            f"Expected {self.dimension} or {self.dimension + 1} coordinates, got {v.shape[0]}"
        )

    def lift(self, spatial: np.ndarray) -> Point:
        spatial = np.asarray(spatial, dtype=float)
        time = math.sqrt(1.0 + float(spatial @ spatial))
        return self._from_vector(np.append(spatial, time))

    def origin(self) -> Point:
        return self.lift(np.zeros(self.dimension))

    def vector(self, p: Point) -> np.ndarray:
        return np.asarray(p.coords, dtype=float)

    def _from_vector(self, z: np.ndarray) -> Point:
        norm_sq = -minkowski_dot(z, z)
        if norm_sq <= 0:
            raise DomainError("Vector is not time-like; cannot normalize onto the hyperboloid")
        z = z / math.sqrt(norm_sq)
        if z[-1] < 0:
            z = -z
        return Point(self.space_id, tuple(float(c) for c in z))

    # ------------------------------------------------------------------
    # Metric and geodesics
    # ------------------------------------------------------------------

    def _distance(self, p: Point, q: Point) -> float:
        diff = self.vector(p) - self.vector(q)
        # <x-y, x-y> = 4 sinh^2(d/2); avoids arccosh cancellation near 1
        chord_sq = max(minkowski_dot(diff, diff), 0.0)
        return 2.0 * math.asinh(math.sqrt(chord_sq) / 2.0)

    def _combine(self, p: Point, q: Point, s: float) -> Point:
        d = self._distance(p, q)
        if d == 0.0:
            return p
        a, b = self.vector(p), self.vector(q)
        denom = math.sinh(d)
        z = (math.sinh((1.0 - s) * d) / denom) * a + (math.sinh(s * d) / denom) * b
        return self._from_vector(z)

    def _geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        return self._combine(p, q, t)

    def _extend(self, p: Point, x: Point, s: float) -> Point:
        return self._combine(p, x, s)

    def exact_angle(self, p: Point, x: Point, y: Point) -> Optional[float]:
        boost = boost_to_origin(self.vector(p))
        u = (boost @ self.vector(x))[:-1]
        v = (boost @ self.vector(y))[:-1]
        return vector_angle(u, v)

    # ------------------------------------------------------------------
    # Membership, sampling, parsing
    # ------------------------------------------------------------------

    def contains(self, p: Point) -> bool:
        if p.space_id != self.space_id or len(p.coords) != self.dimension + 1:
            return False
        z = self.vector(p)
        if not np.all(np.isfinite(z)) or z[-1] <= 0:
            return False
        return abs(minkowski_dot(z, z) + 1.0) <= HYPERBOLOID_TOL * max(1.0, z[-1] ** 2)

    def sample_point(self, rng: np.random.Generator, scale: float = 1.0) -> Point:
        return self.lift(rng.normal(0.0, scale, self.dimension))

    def parse_point(self, text: str) -> Point:
        try:
            values = [float(part) for part in text.split(",") if part.strip()]
        except ValueError as exc:
            raise DomainError(f"Cannot parse hyperbolic point {text!r}") from exc
        return self.point(values)

    # ------------------------------------------------------------------
    # Exponential chart
    # ------------------------------------------------------------------

    def tangent_frame(self, p: Point) -> np.ndarray:
        # inverse boost carries the spatial basis at the origin to T_p
        z = self.vector(p)
        inverse = boost_to_origin(np.append(-z[:-1], z[-1]))
        return inverse[:, :-1]

    def exp_map(self, p: Point, coeffs: np.ndarray) -> Point:
        z = self.vector(p)
        v = self.tangent_frame(p) @ np.asarray(coeffs, dtype=float)
        speed = math.sqrt(max(minkowski_dot(v, v), 0.0))
        if speed == 0.0:
            return p
        return self._from_vector(math.cosh(speed) * z + math.sinh(speed) * (v / speed))

    # ------------------------------------------------------------------
    # Projection
    # ------------------------------------------------------------------

    def project_special(self, convex_set, x: Point) -> Optional[Point]:
        if not isinstance(convex_set, Segment):
            return None
        start, end = convex_set.start, convex_set.end
        self._check(start, end)
        length = self.distance(start, end)
        if length == 0.0:
            return start
        p, q, z = self.vector(start), self.vector(end), self.vector(x)
        # unit tangent at start toward end; the foot of the perpendicular
        # from x onto the full geodesic sits at signed arc length atanh(<z,u>/-<z,p>)
        u = (q + minkowski_dot(p, q) * p) / math.sinh(length)
        ratio = minkowski_dot(z, u) / -minkowski_dot(z, p)
        arc = math.atanh(min(1.0 - 1e-15, max(-1.0 + 1e-15, ratio)))
        return self.geodesic_point(start, end, min(1.0, max(0.0, arc / length)))
