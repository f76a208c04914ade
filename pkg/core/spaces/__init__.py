"""
Concrete CAT(0) model spaces: Euclidean, hyperbolic, metric trees, products.
"""

from core.spaces.convex import (
    Ball,
    ConvexSet,
    ConvexSetKind,
    HalfSpace,
    ProductSet,
    Segment,
    Subtree,
    project_convex,
    projection_residual,
    set_contains,
)
from core.spaces.euclidean import EuclideanSpace
from core.spaces.factory import SpaceHandle, SpaceSpec, build_space, make_space
from core.spaces.hyperbolic import HyperbolicSpace, minkowski_dot
from core.spaces.product import ProductSpace
from core.spaces.tree import (
    TreeCoord,
    TreeSpace,
    TreeSpec,
    build_tree_space,
    random_tree_spec,
    tripod_spec,
)
from core.spaces.tree_file import dump_tree_spec, load_tree_spec, parse_tree_spec

__all__ = [
    'Ball',
    'ConvexSet',
    'ConvexSetKind',
    'EuclideanSpace',
    'HalfSpace',
    'HyperbolicSpace',
    'ProductSet',
    'ProductSpace',
    'Segment',
    'SpaceHandle',
    'SpaceSpec',
    'Subtree',
    'TreeCoord',
    'TreeSpace',
    'TreeSpec',
    'build_space',
    'build_tree_space',
    'dump_tree_spec',
    'load_tree_spec',
    'make_space',
    'minkowski_dot',
    'parse_tree_spec',
    'project_convex',
    'projection_residual',
    'random_tree_spec',
    'set_contains',
    'tripod_spec',
]
