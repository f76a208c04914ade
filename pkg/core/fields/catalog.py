"""
Built-in functionals, nonexpansive maps and the named field catalog.
"""

import logging
import math
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from core.exceptions import InvalidSpec, UnsupportedSet
from core.fields.base import ConvexFunctional, MonotoneField, NonexpansiveMap
from core.fields.complementary import complementary_field
from core.fields.subdifferential import subdifferential_field
from core.geometry.base import GeodesicSpace, Point
from core.spaces.convex import Ball, ConvexSet, HalfSpace, project_convex, set_contains
from core.spaces.euclidean import EuclideanSpace

logger = logging.getLogger(__name__)


class FieldName(str, Enum):
    QUADRATIC = "quadratic"
    INDICATOR = "indicator"
    QUADRATIC_PLUS_INDICATOR = "quadratic_plus_indicator"
    COMPLEMENTARY = "complementary"


class MapName(str, Enum):
    IDENTITY = "identity"
    CONSTANT = "constant"
    REFLECTION = "reflection"
    ROTATION = "rotation"
    PROJECTION = "projection"
    SCALING = "scaling"


def _resolvent_weight(lam: float) -> float:
    return lam / (1.0 + lam)


# ----------------------------------------------------------------------
# Functionals
# ----------------------------------------------------------------------

def quadratic_functional(space: GeodesicSpace, anchor: Point) -> ConvexFunctional:
    """F = 1/2 rho^2(., a); prox_lam(x) = gamma_{x,a}(lam/(1+lam)) in any CAT(0) space"""
    space._check(anchor)

    def evaluate(p: Point) -> float:
        return 0.5 * space.distance(p, anchor) ** 2

    return ConvexFunctional(
        name="quadratic",
        space=space,
        evaluate=evaluate,
        prox_oracle=lambda lam, x: space.geodesic_point(x, anchor, _resolvent_weight(lam)),
        smooth_part=evaluate,
        minimizers=(anchor,),
        min_norm_oracle=lambda x: space.distance(x, anchor),
    )


def indicator_functional(space: GeodesicSpace, convex_set: ConvexSet) -> ConvexFunctional:
    def evaluate(p: Point) -> float:
        return 0.0 if set_contains(space, convex_set, p) else math.inf

    def min_norm(x: Point) -> float:
        return 0.0 if set_contains(space, convex_set, x) else math.inf

    return ConvexFunctional(
        name=f"indicator({convex_set.describe()})",
        space=space,
        evaluate=evaluate,
        prox_oracle=lambda lam, x: project_convex(space, convex_set, x),
        domain_set=convex_set,
        smooth_part=lambda p: 0.0,
        minimizers=convex_set,
        min_norm_oracle=min_norm,
    )


def _euclidean_constrained_min_norm(space: EuclideanSpace, anchor: Point, convex_set: ConvexSet):
    """
    dist(0, x - a + N_C(x)) for balls and halfspaces in R^n; the normal cone
    at a boundary point is the ray along the outward normal.
    """
    if isinstance(convex_set, Ball):
        center = space.vector(convex_set.center)

        def outward(z: np.ndarray) -> Optional[np.ndarray]:
            offset = z - center
            radius = float(np.linalg.norm(offset))
            if radius < convex_set.radius * (1.0 - 1e-12):
                return None
            return offset / radius if radius > 0 else None
    elif isinstance(convex_set, HalfSpace):
        normal = np.asarray(convex_set.normal, dtype=float)
        unit = normal / float(np.linalg.norm(normal))

        def outward(z: np.ndarray) -> Optional[np.ndarray]:
            if float(normal @ z) < convex_set.offset - 1e-12 * max(1.0, abs(convex_set.offset)):
                return None
            return unit
    else:
        return None

    def min_norm(x: Point) -> float:
        if not set_contains(space, convex_set, x):
            return math.inf
        z = space.vector(x)
        gradient = z - space.vector(anchor)
        normal = outward(z)
        if normal is None:
            return float(np.linalg.norm(gradient))
        along = float(gradient @ normal)
        if along >= 0.0:
            return float(np.linalg.norm(gradient))
        return math.sqrt(max(float(gradient @ gradient) - along * along, 0.0))

    return min_norm


def quadratic_plus_indicator_functional(
    space: GeodesicSpace,
    anchor: Point,
    convex_set: ConvexSet,
) -> ConvexFunctional:
    """F = 1/2 rho^2(., a) + indicator of C; argmin F = P_C a"""
    space._check(anchor)

    def smooth(p: Point) -> float:
        return 0.5 * space.distance(p, anchor) ** 2

    def evaluate(p: Point) -> float:
        return smooth(p) if set_contains(space, convex_set, p) else math.inf

    prox_oracle = None
    min_norm = None
    if isinstance(space, EuclideanSpace):
        # completing the square reduces the prox to projecting the unconstrained step
        def prox_oracle(lam: float, x: Point) -> Point:
            return project_convex(space, convex_set, space.geodesic_point(x, anchor, _resolvent_weight(lam)))

        min_norm = _euclidean_constrained_min_norm(space, anchor, convex_set)

    return ConvexFunctional(
        name=f"quadratic_plus_indicator({convex_set.describe()})",
        space=space,
        evaluate=evaluate,
        prox_oracle=prox_oracle,
        domain_set=convex_set,
        smooth_part=smooth,
        minimizers=(project_convex(space, convex_set, anchor),),
        min_norm_oracle=min_norm,
    )


# ----------------------------------------------------------------------
# Nonexpansive maps
# ----------------------------------------------------------------------

def identity_map(space: GeodesicSpace) -> NonexpansiveMap:
    return NonexpansiveMap(
        name="identity",
        space=space,
        apply=lambda x: x,
        closed_resolvent=lambda lam, x: x,
    )


def constant_map(space: GeodesicSpace, value: Point) -> NonexpansiveMap:
    space._check(value)
    return NonexpansiveMap(
        name="constant",
        space=space,
        apply=lambda x: value,
        fixed_points=(value,),
        closed_resolvent=lambda lam, x: space.geodesic_point(x, value, _resolvent_weight(lam)),
    )


def _require_euclidean(space: GeodesicSpace, name: str, dimension: Optional[int] = None) -> EuclideanSpace:
    if not isinstance(space, EuclideanSpace) or (dimension is not None and space.dimension != dimension):
        where = f"R^{dimension}" if dimension else "R^n"
        raise UnsupportedSet(f"Map {name} is only defined on {where}", metadata={'space': space.space_id})
    return space


def scaling_map(space: GeodesicSpace, factor: float) -> NonexpansiveMap:
    """x -> factor * x on R^n; nonexpansive only for |factor| <= 1"""
    space = _require_euclidean(space, "scaling")
    origin = space.point(np.zeros(space.dimension))

    def closed(lam: float, x: Point) -> Point:
        # z (1 + lam) = x + lam * factor * z
        return space.point(space.vector(x) / (1.0 + lam - lam * factor))

    return NonexpansiveMap(
        name=f"scaling({factor:g})",
        space=space,
        apply=lambda x: space.point(factor * space.vector(x)),
        fixed_points=(origin,) if factor != 1.0 else None,
        closed_resolvent=closed,
    )


def reflection_map(space: GeodesicSpace) -> NonexpansiveMap:
    """x -> -x on R^n; J_lam x = x / (1 + 2 lam)"""
    base = scaling_map(space, -1.0)
    return NonexpansiveMap(
        name="reflection",
        space=base.space,
        apply=base.apply,
        fixed_points=base.fixed_points,
        closed_resolvent=base.closed_resolvent,
    )


def rotation_map(space: GeodesicSpace, theta: float) -> NonexpansiveMap:
    space = _require_euclidean(space, "rotation", dimension=2)
    c, s = math.cos(theta), math.sin(theta)
    rotation = np.array([[c, -s], [s, c]])
    origin = space.point((0.0, 0.0))

    def closed(lam: float, x: Point) -> Point:
        system = (1.0 + lam) * np.eye(2) - lam * rotation
        return space.point(np.linalg.solve(system, space.vector(x)))

    return NonexpansiveMap(
        name=f"rotation({theta:g})",
        space=space,
        apply=lambda x: space.point(rotation @ space.vector(x)),
        fixed_points=(origin,) if math.remainder(theta, 2 * math.pi) != 0.0 else None,
        closed_resolvent=closed,
    )


def projection_map(space: GeodesicSpace, convex_set: ConvexSet) -> NonexpansiveMap:
    """
    T = P_C. Moving x toward P_C x keeps its projection, so the resolvent
    is gamma_{x, P_C x}(lam/(1+lam)).
    """
    def closed(lam: float, x: Point) -> Point:
        return space.geodesic_point(x, project_convex(space, convex_set, x), _resolvent_weight(lam))

    return NonexpansiveMap(
        name=f"projection({convex_set.describe()})",
        space=space,
        apply=lambda x: project_convex(space, convex_set, x),
        fixed_points=convex_set,
        closed_resolvent=closed,
    )


def build_map(name: str, space: GeodesicSpace, params: Dict[str, Any]) -> NonexpansiveMap:
    try:
        kind = MapName(name)
    except ValueError as exc:
        raise InvalidSpec(f"Unknown map {name!r}", metadata={'known': [m.value for m in MapName]}) from exc

    if kind == MapName.IDENTITY:
        return identity_map(space)
    if kind == MapName.CONSTANT:
        return constant_map(space, _require(params, "c", name))
    if kind == MapName.REFLECTION:
        return reflection_map(space)
    if kind == MapName.ROTATION:
        return rotation_map(space, float(_require(params, "theta", name)))
    if kind == MapName.SCALING:
        return scaling_map(space, float(_require(params, "factor", name)))
    return projection_map(space, _require(params, "set", name))


def _require(params: Dict[str, Any], key: str, owner: str):
    if params.get(key) is None:
        raise InvalidSpec(f"{owner} needs parameter {key!r}", metadata={'parameter': key})
    return params[key]


# ----------------------------------------------------------------------
# Field catalog
# ----------------------------------------------------------------------

def quadratic(space: GeodesicSpace, anchor: Point) -> MonotoneField:
    return subdifferential_field(quadratic_functional(space, anchor))


def indicator(space: GeodesicSpace, convex_set: ConvexSet) -> MonotoneField:
    return subdifferential_field(indicator_functional(space, convex_set))


def quadratic_plus_indicator(space: GeodesicSpace, anchor: Point, convex_set: ConvexSet) -> MonotoneField:
    return subdifferential_field(quadratic_plus_indicator_functional(space, anchor, convex_set))


def complementary(space: GeodesicSpace, map_name: str, params: Optional[Dict[str, Any]] = None,
                  verify: bool = True) -> MonotoneField:
    return complementary_field(build_map(map_name, space, params or {}), verify=verify)


def build_field(name: str, space: GeodesicSpace, params: Optional[Dict[str, Any]] = None) -> MonotoneField:
    """
    Named catalog entry. params holds parsed values: 'a' (Point), 'set'
    (ConvexSet), 'map' (map name) plus that map's own parameters.

    Raises:
        InvalidSpec: for unknown names or missing parameters
    """
    params = params or {}
    try:
        kind = FieldName(name)
    except ValueError as exc:
        raise InvalidSpec(f"Unknown field {name!r}", metadata={'known': [f.value for f in FieldName]}) from exc

    if kind == FieldName.QUADRATIC:
        return quadratic(space, _require(params, "a", name))
    if kind == FieldName.INDICATOR:
        return indicator(space, _require(params, "set", name))
    if kind == FieldName.QUADRATIC_PLUS_INDICATOR:
        return quadratic_plus_indicator(space, _require(params, "a", name), _require(params, "set", name))
    map_params = {key: value for key, value in params.items() if key != "map"}
    return complementary(space, _require(params, "map", name), map_params)
