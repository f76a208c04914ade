"""
Tangent cone at a point: vectors t*gamma_{p,x} represented by a witness point.
"""

import math
from dataclasses import dataclass, field

from core.exceptions import BaseMismatch, DomainError
from core.geometry.angles import alexandrov_angle
from core.geometry.base import GeodesicSpace, Point

SAME_DIRECTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TangentVec:
    """
    Element of the tangent cone at base.

    The direction is the geodesic from base toward witness; zero marks 0_p.
    Equality is equality in the cone, not of the representatives.
    """
    base: Point
    scale: float
    witness: Point
    zero: bool
    space: GeodesicSpace = field(repr=False)

    @property
    def norm(self) -> float:
        return 0.0 if self.zero else self.scale

    def scaled(self, c: float) -> "TangentVec":
        if c < 0:
            raise DomainError("Tangent cone vectors only scale by nonnegative factors")
        return tangent_vector(self.space, self.base, self.witness, self.scale * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TangentVec):
            return NotImplemented
        return tangent_equal(self, other)

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            'base': repr(self.base.coords),
            'scale': self.scale,
            'witness': repr(self.witness.coords),
            'zero': self.zero,
        }


def tangent_vector(space: GeodesicSpace, base: Point, witness: Point, scale: float = 1.0) -> TangentVec:
    if scale < 0:
        raise DomainError(f"Tangent vector scale must be nonnegative, got {scale}")
    zero = scale == 0.0 or space.same(base, witness)
    return TangentVec(base=base, scale=float(scale), witness=witness, zero=zero, space=space)


def zero_vector(space: GeodesicSpace, base: Point) -> TangentVec:
    return TangentVec(base=base, scale=0.0, witness=base, zero=True, space=space)


def negative_direction(space: GeodesicSpace, p: Point, x: Point, scale: float = 1.0) -> TangentVec:
    """Vector along the negative geodesic of gamma_{p,x}"""
    witness = space.extend_geodesic(p, x, -1.0)
    return tangent_vector(space, p, witness, scale)


def _check_base(u: TangentVec, v: TangentVec) -> GeodesicSpace:
    space = u.space
    if u.base.space_id != v.base.space_id or not space.same(u.base, v.base):
        raise BaseMismatch(
            "Tangent vectors live in different tangent cones",
            metadata={'left': repr(u.base.coords), 'right': repr(v.base.coords)}
        )
    return space


def _angle_between(u: TangentVec, v: TangentVec) -> float:
    if u.witness == v.witness:
        return 0.0
    return alexandrov_angle(u.space, u.base, u.witness, v.witness).radians


def tangent_distance(u: TangentVec, v: TangentVec) -> float:
    _check_base(u, v)
    a, b = u.norm, v.norm
    if a == 0.0 or b == 0.0:
        return abs(a - b)
    half = math.sin(_angle_between(u, v) / 2.0)
    # (a-b)^2 + 2ab(1-cos) keeps same-direction distances exact
    return math.sqrt((a - b) ** 2 + 4.0 * a * b * half * half)


def tangent_inner(u: TangentVec, v: TangentVec) -> float:
    _check_base(u, v)
    a, b = u.norm, v.norm
    if a == 0.0 or b == 0.0:
        return 0.0
    theta = _angle_between(u, v)
    if theta == 0.0:
        return a * b
    return a * b * math.cos(theta)


def tangent_equal(u: TangentVec, v: TangentVec) -> bool:
    try:
        _check_base(u, v)
    except BaseMismatch:
        return False
    if u.zero or v.zero:
        return u.zero and v.zero
    if abs(u.norm - v.norm) > 1e-12 * max(1.0, u.norm):
        return False
    return _angle_between(u, v) <= SAME_DIRECTION_TOL


def quasi_inner(space: GeodesicSpace, p: Point, x: Point, y: Point, t: float = 1.0, s: float = 1.0) -> float:
    """(ts/2)[rho^2(p,x) + rho^2(p,y) - rho^2(x,y)]"""
    dx = space.distance(p, x)
    dy = space.distance(p, y)
    dxy = space.distance(x, y)
    return 0.5 * t * s * (dx * dx + dy * dy - dxy * dxy)
