"""
Operational representations of monotone vector fields, convex functionals
and nonexpansive maps.

A field is an immutable bundle of pure oracles. The resolvent oracle is
mandatory; graph samples, the minimal-norm oracle and the zero-set witness
are optional and consumers fall back or raise when they are missing.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

from config.settings import settings
from core.exceptions import DomainError, NoZeroSet
from core.geometry.base import GeodesicSpace, Point
from core.geometry.tangent import TangentVec
from core.spaces.convex import ConvexSet, project_convex

GraphPair = Tuple[Point, TangentVec]
PointSet = Union[ConvexSet, Tuple[Point, ...]]

ResolventOracle = Callable[..., Point]


def distance_to_set(space: GeodesicSpace, target: PointSet, x: Point) -> float:
    """Distance from x to a convex set or to the nearest of a list of points"""
    if isinstance(target, ConvexSet):
        return space.distance(x, project_convex(space, target, x))
    return min(space.distance(x, p) for p in target)


def nearest_in_set(space: GeodesicSpace, target: PointSet, x: Point) -> Point:
    if isinstance(target, ConvexSet):
        return project_convex(space, target, x)
    return min(target, key=lambda p: space.distance(x, p))


@dataclass(frozen=True)
class MonotoneField:
    """
    A monotone vector field A presented through its resolvents.

    resolvent_oracle(lam, x, tol=..., max_iter=...) returns J_lam(x).
    graph_sampler(seed) returns a pair (p, v) with v in Ap.
    min_norm_oracle(x) returns |Ax| in [0, inf].
    """
    name: str
    space: GeodesicSpace
    resolvent_oracle: ResolventOracle
    graph_sampler: Optional[Callable[[int], GraphPair]] = None
    min_norm_oracle: Optional[Callable[[Point], float]] = None
    zero_set: Optional[PointSet] = None
    domain_set: Optional[ConvexSet] = None
    full_domain: bool = False

    def resolvent(
        self,
        lam: float,
        x: Point,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> Point:
        if not lam > 0:
            raise DomainError(f"Resolvent parameter must be positive, got {lam}", metadata={'lambda': lam})
        self.space._check(x)
        return self.resolvent_oracle(
            lam,
            x,
            tol=tol if tol is not None else settings.resolvent_tol,
            max_iter=max_iter if max_iter is not None else settings.resolvent_max_iter,
        )

    @property
    def has_domain_witness(self) -> bool:
        return self.full_domain or self.domain_set is not None

    @property
    def has_zero_set(self) -> bool:
        return self.zero_set is not None

    def _require_zero_set(self) -> PointSet:
        if self.zero_set is None:
            raise NoZeroSet(f"Field {self.name} has no zero-set witness", metadata={'field': self.name})
        return self.zero_set

    def distance_to_zero_set(self, x: Point) -> float:
        return distance_to_set(self.space, self._require_zero_set(), x)

    def nearest_zero(self, x: Point) -> Point:
        """P_{A^-1 0} x"""
        return nearest_in_set(self.space, self._require_zero_set(), x)

    def domain_closure_projection(self, x: Point) -> Point:
        """P onto the closure of D(A)"""
        if self.domain_set is None:
            return x
        return project_convex(self.space, self.domain_set, x)


@dataclass(frozen=True)
class ConvexFunctional:
    """
    A proper convex lower semicontinuous functional.

    smooth_part, when given, is the finite convex part of F with the
    constraint carried by domain_set; generic prox solvers differentiate it.
    """
    name: str
    space: GeodesicSpace
    evaluate: Callable[[Point], float]
    prox_oracle: Optional[Callable[[float, Point], Point]] = None
    domain_set: Optional[ConvexSet] = None
    smooth_part: Optional[Callable[[Point], float]] = None
    minimizers: Optional[PointSet] = None
    min_norm_oracle: Optional[Callable[[Point], float]] = None

    def __call__(self, p: Point) -> float:
        return self.evaluate(p)


@dataclass(frozen=True)
class NonexpansiveMap:
    """
    A map T with rho(Tx, Ty) <= rho(x, y).

    closed_resolvent(lam, x), when known, is the resolvent of the
    complementary field in closed form.
    """
    name: str
    space: GeodesicSpace
    apply: Callable[[Point], Point]
    fixed_points: Optional[PointSet] = None
    closed_resolvent: Optional[Callable[[float, Point], Point]] = None

    def __call__(self, x: Point) -> Point:
        return self.apply(x)
