"""
Space-core behaviour: geodesics, angles, the tangent cone and the CAT(0)
inequality residuals.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import BaseMismatch, DomainError, NoExtension, SpaceMismatch, ZeroDirection
from core.geometry import (
    AngleMethod,
    alexandrov_angle,
    cn_residual,
    comparison_angle,
    comparison_angle_profile,
    first_variation_residual,
    negative_direction,
    quad_residual,
    quasi_inner,
    tangent_distance,
    tangent_inner,
    tangent_vector,
    zero_vector,
)
from core.spaces import (
    EuclideanSpace,
    HyperbolicSpace,
    ProductSpace,
    build_tree_space,
    random_tree_spec,
    tripod_spec,
)

SPACE_FACTORIES = {
    "r3": lambda: EuclideanSpace(3),
    "h2": lambda: HyperbolicSpace(2),
    "random_tree": lambda: build_tree_space(random_tree_spec(20, seed=7)),
    "line_times_tripod": lambda: ProductSpace(
        EuclideanSpace(1), build_tree_space(tripod_spec((1.0, 1.0, 1.0)))
    ),
}


@pytest.fixture
def root_tree():
    """root-a of length 1 and root-b of length 2"""
    return build_tree_space({
        "vertices": ["root", "a", "b"],
        "edges": [("root", "a", 1.0), ("root", "b", 2.0)],
    })


# ----------------------------------------------------------------------
# Geodesics
# ----------------------------------------------------------------------

def test_euclidean_distance_and_midpoint(r2):
    p, q = r2.point([0, 0]), r2.point([3, 4])
    assert r2.distance(p, q) == pytest.approx(5.0)
    assert r2.geodesic_point(p, q, 0.5) == r2.point([1.5, 2.0])


def test_geodesic_endpoints_are_exact(h2):
    p, q = h2.point([0.2, -0.1]), h2.point([1.0, 0.7])
    assert h2.geodesic_point(p, q, 0.0) == p
    assert h2.geodesic_point(p, q, 1.0) == q


@pytest.mark.parametrize("t", [-0.1, 1.5])
def test_geodesic_parameter_out_of_range(r2, t):
    with pytest.raises(DomainError):
        r2.geodesic_point(r2.point([0, 0]), r2.point([1, 0]), t)


def test_points_from_other_spaces_are_rejected(r2, r3):
    with pytest.raises(SpaceMismatch):
        r2.distance(r2.point([0, 0]), r3.point([0, 0, 0]))


def test_euclidean_backward_extension(r2):
    p, x = r2.point([0, 0]), r2.point([1, 0])
    assert r2.extend_geodesic(p, x, -1.0) == r2.point([-1.0, 0.0])


def test_extension_needs_distinct_points(r2):
    p = r2.point([1, 1])
    with pytest.raises(DomainError):
        r2.extend_geodesic(p, p, 2.0)


def test_hyperbolic_forward_extension(h2):
    p, x = h2.point([0.1, 0.2]), h2.point([0.6, -0.3])
    q = h2.extend_geodesic(p, x, 2.0)
    assert h2.contains(q)
    assert h2.distance(p, q) == pytest.approx(2.0 * h2.distance(p, x), rel=1e-10)
    assert h2.distance(x, h2.geodesic_point(p, q, 0.5)) < 1e-9


def test_tree_distance_through_root(root_tree):
    a, b = root_tree.vertex("a"), root_tree.vertex("b")
    assert root_tree.distance(a, b) == pytest.approx(3.0)
    assert root_tree.geodesic_point(a, b, 1.0 / 3.0) == root_tree.vertex("root")


def test_tree_extension_stops_at_leaf(root_tree):
    a, root = root_tree.vertex("a"), root_tree.vertex("root")
    # root -> a cannot continue past the leaf a
    with pytest.raises(NoExtension):
        root_tree.extend_geodesic(root, a, 2.0)


# ----------------------------------------------------------------------
# Angles
# ----------------------------------------------------------------------

def test_comparison_angle_right_triangle(r2):
    p, q, r = r2.point([0, 0]), r2.point([1, 0]), r2.point([0, 1])
    assert comparison_angle(r2, p, q, r).radians == pytest.approx(math.pi / 2)


def test_comparison_angle_degenerate_cases(r2):
    p, q = r2.point([0, 0]), r2.point([1, 0])
    assert comparison_angle(r2, p, p, p).radians == 0.0
    assert comparison_angle(r2, p, p, q).radians == pytest.approx(math.pi / 2)


def test_alexandrov_angle_exact_in_plane(r2):
    result = alexandrov_angle(r2, r2.point([0, 0]), r2.point([2, 0]), r2.point([0, 3]))
    assert result.method == AngleMethod.EXACT
    assert result.radians == pytest.approx(math.pi / 2)
    assert result.estimated_error == 0.0


def test_alexandrov_angle_zero_direction(r2):
    p = r2.point([0, 0])
    with pytest.raises(ZeroDirection):
        alexandrov_angle(r2, p, p, r2.point([1, 0]))


def test_extrapolated_angle_matches_closed_form(h2):
    p, x, y = h2.point([0.3, -0.2]), h2.point([1.2, 0.4]), h2.point([-0.5, 1.1])
    exact = alexandrov_angle(h2, p, x, y)
    estimate = alexandrov_angle(h2, p, x, y, prefer_exact=False)
    assert estimate.method == AngleMethod.EXTRAPOLATED
    assert estimate.radians == pytest.approx(exact.radians, abs=1e-6)


def test_comparison_angle_profile_shrinks_toward_the_angle(h2):
    p, x, y = h2.origin(), h2.point([2.0, 0.0]), h2.point([0.0, 2.0])
    profile = comparison_angle_profile(h2, p, x, y, [1.0, 0.5, 0.25, 0.125, 0.0625])
    angles = [angle for _, angle in profile]
    assert all(later <= earlier + 1e-12 for earlier, later in zip(angles, angles[1:]))
    assert angles[-1] >= alexandrov_angle(h2, p, x, y).radians - 1e-9


def test_tree_angles_are_zero_or_pi(tripod):
    hub = tripod.vertex("hub")
    a, b = tripod.vertex("a"), tripod.vertex("b")
    near_a = tripod.point_on_edge("hub", "a", 0.4)
    assert alexandrov_angle(tripod, hub, a, b).radians == pytest.approx(math.pi)
    assert alexandrov_angle(tripod, hub, a, near_a).radians == 0.0


def test_first_variation_in_the_plane(r2):
    p, u, x = r2.point([0, 0]), r2.point([1, 0]), r2.point([1, 1])
    assert abs(first_variation_residual(r2, p, u, x, 1e-5)) < 1e-4


# ----------------------------------------------------------------------
# Tangent cone
# ----------------------------------------------------------------------

def test_tangent_distance_same_direction(r2):
    p, x = r2.point([0, 0]), r2.point([1, 0])
    assert tangent_distance(tangent_vector(r2, p, x, 3.0), tangent_vector(r2, p, x, 1.0)) == pytest.approx(2.0)


def test_tangent_distance_to_zero_vector(r2):
    p, x = r2.point([0, 0]), r2.point([0, 5])
    assert tangent_distance(zero_vector(r2, p), tangent_vector(r2, p, x, 0.7)) == pytest.approx(0.7)


def test_tangent_distance_orthogonal_units(r2):
    p = r2.point([0, 0])
    u = tangent_vector(r2, p, r2.point([1, 0]))
    v = tangent_vector(r2, p, r2.point([0, 1]))
    assert tangent_distance(u, v) == pytest.approx(math.sqrt(2.0))


def test_tangent_inner_products(r2):
    p = r2.point([0, 0])
    u = tangent_vector(r2, p, r2.point([1, 0]), 2.0)
    v = tangent_vector(r2, p, r2.point([math.cos(math.pi / 3), math.sin(math.pi / 3)]), 3.0)
    assert tangent_inner(u, u) == pytest.approx(4.0)
    assert tangent_inner(u, v) == pytest.approx(3.0, abs=1e-12)


def test_tangent_equality_ignores_the_witness(r2):
    p = r2.point([0, 0])
    assert tangent_vector(r2, p, r2.point([1, 0]), 2.0) == tangent_vector(r2, p, r2.point([4, 0]), 2.0)
    assert tangent_vector(r2, p, r2.point([1, 0]), 2.0) != tangent_vector(r2, p, r2.point([0, 1]), 2.0)


def test_tangent_scaling_rules(r2):
    p, x = r2.point([0, 0]), r2.point([1, 0])
    u = tangent_vector(r2, p, x, 2.0)
    assert u.scaled(0.5).norm == pytest.approx(1.0)
    with pytest.raises(DomainError):
        u.scaled(-1.0)
    with pytest.raises(DomainError):
        tangent_vector(r2, p, x, -0.5)


def test_tangent_vectors_at_different_bases(r2):
    u = tangent_vector(r2, r2.point([0, 0]), r2.point([1, 0]))
    v = tangent_vector(r2, r2.point([1, 1]), r2.point([2, 1]))
    with pytest.raises(BaseMismatch):
        tangent_inner(u, v)


def test_negative_direction_is_opposite(r2):
    p, x = r2.point([0, 0]), r2.point([1, 2])
    forward = tangent_vector(r2, p, x)
    backward = negative_direction(r2, p, x)
    assert tangent_inner(forward, backward) == pytest.approx(-1.0)


def test_quasi_inner_in_the_plane(r2):
    p = r2.point([0, 0])
    assert quasi_inner(r2, p, r2.point([1, 0]), r2.point([0, 1])) == pytest.approx(0.0, abs=1e-12)
    assert quasi_inner(r2, p, r2.point([2, 0]), r2.point([3, 0]), t=0.5, s=2.0) == pytest.approx(6.0)


def test_quasi_inner_on_tree(root_tree):
    root, a, b = root_tree.vertex("root"), root_tree.vertex("a"), root_tree.vertex("b")
    assert quasi_inner(root_tree, root, a, b) == pytest.approx(-2.0)


# ----------------------------------------------------------------------
# CAT(0) residuals
# ----------------------------------------------------------------------

def test_cn_residual_vanishes_in_euclidean_space(r3):
    geodesic = r3.geodesic(r3.point([0, 0, 0]), r3.point([1, 2, 3]))
    v = r3.point([-1, 0.5, 2])
    for t in (0.0, 0.3, 0.5, 1.0):
        assert cn_residual(r3, geodesic, v, t) == pytest.approx(0.0, abs=1e-12)


def test_cn_residual_strict_on_tripod(tripod):
    geodesic = tripod.geodesic(tripod.vertex("a"), tripod.vertex("b"))
    assert cn_residual(tripod, geodesic, tripod.vertex("c"), 0.5) > 0.0


def test_cn_residual_parameter_range(r2):
    geodesic = r2.geodesic(r2.point([0, 0]), r2.point([1, 0]))
    with pytest.raises(DomainError):
        cn_residual(r2, geodesic, r2.point([0, 1]), 1.2)


def test_quad_residual_with_a_repeated_corner(r2):
    x, y, u, v = r2.point([0, 0]), r2.point([1, 0]), r2.point([1, 0]), r2.point([1, 1])
    assert quad_residual(r2, x, y, u, v) == pytest.approx(2.0)


def test_quad_residual_unit_square(r2):
    a, b, c, d = r2.point([0, 0]), r2.point([1, 0]), r2.point([1, 1]), r2.point([0, 1])
    # corners in cyclic order
    assert quad_residual(r2, a, b, c, d) == pytest.approx(4.0)
    # x-y and u-v parallel: the parallelogram case is tight
    assert quad_residual(r2, a, b, d, c) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(name=st.sampled_from(sorted(SPACE_FACTORIES)), seed=st.integers(0, 2 ** 32 - 1))
def test_cat0_inequalities_hold_on_samples(name, seed):
    space = SPACE_FACTORIES[name]()
    rng = np.random.default_rng(seed)
    x, y, u, v = (space.sample_point(rng) for _ in range(4))
    t = float(rng.uniform())
    assert cn_residual(space, space.geodesic(x, y), v, t) >= -1e-9
    assert quad_residual(space, x, y, u, v) >= -1e-9


@settings(max_examples=25, deadline=None)
@given(name=st.sampled_from(sorted(SPACE_FACTORIES)), seed=st.integers(0, 2 ** 32 - 1))
def test_alexandrov_angle_bounded_by_comparison_angle(name, seed):
    space = SPACE_FACTORIES[name]()
    rng = np.random.default_rng(seed)
    p, x, y = (space.sample_point(rng) for _ in range(3))
    if space.same(p, x) or space.same(p, y):
        return
    angle = alexandrov_angle(space, p, x, y).radians
    assert angle <= comparison_angle(space, p, x, y).radians + 1e-6


@settings(max_examples=25, deadline=None)
@given(name=st.sampled_from(sorted(SPACE_FACTORIES)), seed=st.integers(0, 2 ** 32 - 1))
def test_tangent_cone_inequalities_hold_on_samples(name, seed):
    space = SPACE_FACTORIES[name]()
    rng = np.random.default_rng(seed)
    p, x, y, z = (space.sample_point(rng) for _ in range(4))
    t, s, r = (float(c) for c in rng.uniform(0.0, 2.0, size=3))
    u = tangent_vector(space, p, x, t * space.distance(p, x))
    v = tangent_vector(space, p, y, s * space.distance(p, y))
    w = tangent_vector(space, p, z, r)
    zero = zero_vector(space, p)
    tol = 1e-9 * (1.0 + u.norm + v.norm + w.norm) ** 2

    for a, b in ((u, v), (u, w), (u, zero), (zero, v)):
        d = tangent_distance(a, b)
        assert abs(a.norm - b.norm) - tol <= d <= a.norm + b.norm + tol
        assert d == pytest.approx(tangent_distance(b, a), abs=tol)

    for a, b, c in ((u, w, v), (u, v, zero), (u, zero, v)):
        assert tangent_distance(a, c) <= tangent_distance(a, b) + tangent_distance(b, c) + tol

    g = tangent_inner(u, v)
    assert abs(g) <= u.norm * v.norm + tol
    assert tangent_inner(u.scaled(0.5), v) == pytest.approx(0.5 * g, abs=tol)
    assert g - quasi_inner(space, p, x, y, t, s) >= -tol
