"""
Monotone vector fields: subdifferentials of convex functionals, complementary
fields of nonexpansive maps, and sampled monotonicity checks.
"""

from core.fields.base import (
    ConvexFunctional,
    GraphPair,
    MonotoneField,
    NonexpansiveMap,
    distance_to_set,
)
from core.fields.catalog import (
    FieldName,
    MapName,
    build_field,
    build_map,
    complementary,
    constant_map,
    identity_map,
    indicator,
    indicator_functional,
    projection_map,
    quadratic,
    quadratic_functional,
    quadratic_plus_indicator,
    quadratic_plus_indicator_functional,
    reflection_map,
    rotation_map,
    scaling_map,
)
from core.fields.complementary import banach_resolvent, check_nonexpansive, complementary_field
from core.fields.monotonicity import (
    convexity_residual,
    fermat_residual,
    field_min_norm,
    monotonicity_residual,
    quasi_monotonicity_residual,
    sample_monotonicity,
    subgradient_residual,
)
from core.fields.prox import generic_prox, prox
from core.fields.subdifferential import subdifferential_field

__all__ = [
    'ConvexFunctional',
    'FieldName',
    'GraphPair',
    'MapName',
    'MonotoneField',
    'NonexpansiveMap',
    'banach_resolvent',
    'build_field',
    'build_map',
    'check_nonexpansive',
    'complementary',
    'complementary_field',
    'constant_map',
    'convexity_residual',
    'distance_to_set',
    'fermat_residual',
    'field_min_norm',
    'generic_prox',
    'identity_map',
    'indicator',
    'indicator_functional',
    'monotonicity_residual',
    'projection_map',
    'prox',
    'quadratic',
    'quadratic_functional',
    'quadratic_plus_indicator',
    'quadratic_plus_indicator_functional',
    'quasi_monotonicity_residual',
    'reflection_map',
    'rotation_map',
    'sample_monotonicity',
    'scaling_map',
    'subdifferential_field',
    'subgradient_residual',
]
