"""
Abstract geodesic-space interface shared by every model space.

A space owns its points: each Point is tagged with the owning space's id and
every public operation checks that tag before doing any arithmetic. Concrete
spaces implement the underscore hooks; the public methods handle argument
validation and the exact endpoint cases.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np

from config.settings import settings
from core.exceptions import DomainError, SpaceMismatch


class SpaceKind(str, Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    TREE = "tree"
    PRODUCT = "product"


class AngleMethod(str, Enum):
    EXACT = "exact-closed-form"
    EXTRAPOLATED = "comparison-limit-extrapolated"


@dataclass(frozen=True)
class Point:
    """An element of a model space; coords layout is owned by the space"""
    space_id: str
    coords: Any


@dataclass(frozen=True)
class AngleResult:
    radians: float
    method: AngleMethod
    estimated_error: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "radians", min(max(float(self.radians), 0.0), math.pi))
        if self.method == AngleMethod.EXACT:
            object.__setattr__(self, "estimated_error", 0.0)


@dataclass(frozen=True)
class GeodesicSegment:
    """The normalized geodesic [0,1] -> space from start to end"""
    start: Point
    end: Point
    length: float
    space: "GeodesicSpace" = field(compare=False, repr=False)

    def eval(self, t: float) -> Point:
        return self.space.geodesic_point(self.start, self.end, t)


class GeodesicSpace(ABC):
    """
    Base class for complete CAT(0) model spaces.

    Provides:
    - membership tagging and SpaceMismatch checks
    - exact endpoint handling for geodesic evaluation
    - dispatch between geodesic evaluation and extension
    """

    kind: SpaceKind
    supports_extension: bool = True

    def __init__(self, space_id: str):
        self.space_id = space_id

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.space_id!r})"

    # ------------------------------------------------------------------
    # Public operations
    # ------------------------------------------------------------------

    def distance(self, p: Point, q: Point) -> float:
        self._check(p, q)
        if p == q:
            return 0.0
        return self._distance(p, q)

    def geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        self._check(p, q)
        if not 0.0 <= t <= 1.0:
            raise DomainError(
                f"Geodesic parameter must lie in [0, 1], got {t}",
                metadata={'t': t}
            )
        if t == 0.0 or p == q:
            return p
        if t == 1.0:
            return q
        return self._geodesic_point(p, q, float(t))

    def extend_geodesic(self, p: Point, x: Point, s: float) -> Point:
        """
        Evaluate the chosen extension eta of the geodesic from p to x with
        eta(0) = p and eta(1) = x at an arbitrary real s.
        """
        self._check(p, x)
        if self.same(p, x):
            raise DomainError("Geodesic extension needs two distinct points")
        if 0.0 <= s <= 1.0:
            return self.geodesic_point(p, x, s)
        return self._extend(p, x, float(s))

    def geodesic(self, p: Point, q: Point) -> GeodesicSegment:
        return GeodesicSegment(start=p, end=q, length=self.distance(p, q), space=self)

    def same(self, p: Point, q: Point) -> bool:
        return p == q or self.distance(p, q) <= settings.zero_tol

    def exact_angle(self, p: Point, x: Point, y: Point) -> Optional[float]:
        """Closed-form Alexandrov angle at p, or None when unavailable"""
        return None

    def project_special(self, convex_set, x: Point) -> Optional[Point]:
        """Space-specific projection hook; None defers to the generic rules"""
        return None

    # ------------------------------------------------------------------
    # Hooks for concrete spaces
    # ------------------------------------------------------------------

    @abstractmethod
    def _distance(self, p: Point, q: Point) -> float:
        ...

    @abstractmethod
    def _geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        ...

    @abstractmethod
    def _extend(self, p: Point, x: Point, s: float) -> Point:
        ...

    @abstractmethod
    def contains(self, p: Point) -> bool:
        ...

    @abstractmethod
    def sample_point(self, rng: np.random.Generator, scale: float = 1.0) -> Point:
        ...

    @abstractmethod
    def parse_point(self, text: str) -> Point:
        ...

    def _check(self, *points: Point) -> None:
        for p in points:
            if p.space_id != self.space_id:
                raise SpaceMismatch(
                    f"Point from {p.space_id} used in {self.space_id}",
                    metadata={'expected': self.space_id, 'actual': p.space_id}
                )


class ExponentialChart(ABC):
    """Spaces with a global exponential map and orthonormal tangent frames"""

    @abstractmethod
    def tangent_frame(self, p: Point) -> np.ndarray:
        """Columns form an orthonormal basis of the tangent space at p"""

    @abstractmethod
    def exp_map(self, p: Point, coeffs: np.ndarray) -> Point:
        """Exponential map at p of the vector with the given frame coefficients"""


def vector_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between two nonzero Euclidean vectors, stable near 0 and pi"""
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return 2.0 * math.atan2(float(np.linalg.norm(u - v)), float(np.linalg.norm(u + v)))
