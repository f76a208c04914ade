"""
Space core: the geodesic-space interface, angles, tangent cones and the
CAT(0) inequality residuals.
"""

from core.geometry.angles import (
    alexandrov_angle,
    comparison_angle,
    comparison_angle_profile,
    first_variation_residual,
)
from core.geometry.base import (
    AngleMethod,
    AngleResult,
    ExponentialChart,
    GeodesicSegment,
    GeodesicSpace,
    Point,
    SpaceKind,
)
from core.geometry.residuals import cn_residual, quad_residual
from core.geometry.tangent import (
    TangentVec,
    negative_direction,
    quasi_inner,
    tangent_distance,
    tangent_equal,
    tangent_inner,
    tangent_vector,
    zero_vector,
)

__all__ = [
    'AngleMethod',
    'AngleResult',
    'ExponentialChart',
    'GeodesicSegment',
    'GeodesicSpace',
    'Point',
    'SpaceKind',
    'TangentVec',
    'alexandrov_angle',
    'cn_residual',
    'comparison_angle',
    'comparison_angle_profile',
    'first_variation_residual',
    'negative_direction',
    'quad_residual',
    'quasi_inner',
    'tangent_distance',
    'tangent_equal',
    'tangent_inner',
    'tangent_vector',
    'zero_vector',
]
