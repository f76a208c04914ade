"""
Monotone fields: the catalog, graph samples, monotonicity residuals,
minimal norms and complementary fields of nonexpansive maps.
"""

import dataclasses
import math

import numpy as np
import pytest

from core.exceptions import DomainError, InvalidSpec, NotNonexpansive, NoZeroSet, ProxDiverged, UnsupportedSet
from core.fields import (
    MonotoneField,
    banach_resolvent,
    build_field,
    build_map,
    check_nonexpansive,
    complementary,
    complementary_field,
    convexity_residual,
    fermat_residual,
    field_min_norm,
    indicator,
    monotonicity_residual,
    prox,
    quadratic,
    quadratic_functional,
    quadratic_plus_indicator,
    quasi_monotonicity_residual,
    rotation_map,
    sample_monotonicity,
    subgradient_residual,
)
from core.geometry import tangent_vector
from core.spaces import Ball, HalfSpace


@pytest.fixture
def unit_ball(r2):
    return Ball(r2.point([0, 0]), 1.0)


# ----------------------------------------------------------------------
# Catalog
# ----------------------------------------------------------------------

def test_build_field_by_name(r2, unit_ball):
    a = r2.point([2, 2])
    assert build_field("quadratic", r2, {"a": a}).name == "subdifferential(quadratic)"
    assert build_field("indicator", r2, {"set": unit_ball}).domain_set == unit_ball
    field = build_field("quadratic_plus_indicator", r2, {"a": a, "set": unit_ball})
    assert field.has_zero_set and field.has_domain_witness
    assert build_field("complementary", r2, {"map": "rotation", "theta": 0.5}).full_domain


@pytest.mark.parametrize("name,params", [
    ("gradient", {}),
    ("quadratic", {}),
    ("indicator", {}),
    ("complementary", {}),
    ("complementary", {"map": "shear"}),
    ("complementary", {"map": "rotation"}),
])
def test_build_field_rejects_bad_requests(r2, name, params):
    with pytest.raises(InvalidSpec):
        build_field(name, r2, params)


def test_euclidean_only_maps(h2, r3):
    with pytest.raises(UnsupportedSet):
        complementary(h2, "reflection")
    with pytest.raises(UnsupportedSet):
        complementary(r3, "rotation", {"theta": 0.3})


def test_resolvent_requires_positive_lambda(r2):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(DomainError):
        field.resolvent(0.0, r2.point([1, 1]))


def test_quadratic_resolvent_closed_form(r2):
    field = quadratic(r2, r2.point([0, 0]))
    z = field.resolvent(1.0, r2.point([2.0, -4.0]))
    assert z == r2.point([1.0, -2.0])


def test_indicator_resolvent_is_projection(r2, unit_ball):
    field = indicator(r2, unit_ball)
    for lam in (1e-3, 1.0, 1e3):
        assert field.resolvent(lam, r2.point([0, 3])) == r2.point([0.0, 1.0])


def test_zero_set_witness(r2, unit_ball):
    field = quadratic_plus_indicator(r2, r2.point([2, 2]), unit_ball)
    corner = r2.point([1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert r2.distance(field.nearest_zero(r2.point([5, 5])), corner) < 1e-12
    assert field.distance_to_zero_set(corner) < 1e-12

    identity = complementary(r2, "identity")
    assert not identity.has_zero_set
    with pytest.raises(NoZeroSet):
        identity.nearest_zero(r2.point([1, 0]))


# ----------------------------------------------------------------------
# Monotonicity
# ----------------------------------------------------------------------

def test_quadratic_monotonicity_residuals(r2):
    field = quadratic(r2, r2.point([0, 0]))
    p, q = r2.point([1, 0]), r2.point([0, 2])
    # A p = p - a, written as a tangent vector pointing away from the anchor
    u = tangent_vector(r2, p, r2.point([2, 0]), 1.0)
    v = tangent_vector(r2, q, r2.point([0, 4]), 2.0)
    assert monotonicity_residual(field, (p, u), (q, v)) == pytest.approx(-math.sqrt(5.0))
    assert quasi_monotonicity_residual(field, (p, u), (q, v)) == pytest.approx(-5.0)


def test_monotonicity_residual_same_point(r2):
    field = quadratic(r2, r2.point([0, 0]))
    p = r2.point([1, 1])
    pair = (p, tangent_vector(r2, p, r2.point([2, 2]), math.sqrt(2.0)))
    assert monotonicity_residual(field, pair, pair) == 0.0


def test_sampled_monotonicity_quadratic(cat0_space, rng):
    anchor = cat0_space.sample_point(rng)
    residuals = sample_monotonicity(quadratic(cat0_space, anchor), 60, seed=3)
    assert max(residuals) <= 1e-9


@pytest.mark.parametrize("map_name,params", [
    ("rotation", {"theta": 0.7}),
    ("reflection", {}),
    ("scaling", {"factor": 0.5}),
    ("identity", {}),
])
def test_sampled_monotonicity_complementary(r2, map_name, params):
    residuals = sample_monotonicity(complementary(r2, map_name, params), 100, seed=11)
    assert max(residuals) <= 1e-9


def test_expansive_map_is_caught(r2):
    with pytest.raises(NotNonexpansive):
        complementary(r2, "scaling", {"factor": 2.0})

    field = complementary(r2, "scaling", {"factor": 2.0}, verify=False)
    residuals = sample_monotonicity(field, 50, seed=5)
    assert min(residuals) > 0.0


def test_check_nonexpansive_contractions(r2):
    assert check_nonexpansive(build_map("scaling", r2, {"factor": 0.5})) < 0.0
    assert check_nonexpansive(build_map("rotation", r2, {"theta": 1.0})) <= 1e-12


@pytest.fixture
def iterated_rotation(r2):
    """Rotation with its closed-form resolvent removed"""
    return dataclasses.replace(rotation_map(r2, 0.7), closed_resolvent=None)


@pytest.mark.parametrize("lam", [0.1, 1.0, 100.0])
def test_iterated_complementary_resolvent_matches_closed_form(r2, iterated_rotation, lam):
    x = r2.point([1.5, -0.5])
    closed = complementary_field(rotation_map(r2, 0.7)).resolvent(lam, x)
    iterated = complementary_field(iterated_rotation).resolvent(lam, x)
    assert r2.distance(closed, iterated) <= 1e-8


def test_iterated_complementary_resolvent_is_a_fixed_point(r2, iterated_rotation):
    x = r2.point([1.5, -0.5])
    z = banach_resolvent(iterated_rotation, 2.0, x, tol=1e-13, max_iter=10_000)
    update = r2.geodesic_point(x, iterated_rotation(z), 2.0 / 3.0)
    assert r2.distance(update, z) <= 1e-12


def test_iterated_complementary_resolvent_runs_out_of_iterations(r2, iterated_rotation):
    x = r2.point([1.5, -0.5])
    with pytest.raises(ProxDiverged):
        banach_resolvent(iterated_rotation, 100.0, x, tol=1e-12, max_iter=50)
    with pytest.raises(ProxDiverged):
        complementary_field(iterated_rotation).resolvent(100.0, x, max_iter=50)


def test_sampling_needs_a_sampler(r1):
    field = MonotoneField(name="bare", space=r1, resolvent_oracle=lambda lam, x, tol, max_iter: x)
    with pytest.raises(DomainError):
        sample_monotonicity(field, 3, seed=0)


def test_graph_samples_are_deterministic(h2):
    field = quadratic(h2, h2.origin())
    first, second = field.graph_sampler(17), field.graph_sampler(17)
    assert first[0] == second[0]
    assert first[1] == second[1]


# ----------------------------------------------------------------------
# Minimal norm
# ----------------------------------------------------------------------

def test_min_norm_closed_forms(r2, unit_ball):
    a = r2.point([2, 2])
    assert field_min_norm(quadratic(r2, a), r2.point([2, 5])) == pytest.approx(3.0)

    ind = indicator(r2, unit_ball)
    assert field_min_norm(ind, r2.point([0.5, 0])) == 0.0
    assert field_min_norm(ind, r2.point([2, 0])) == math.inf

    constrained = quadratic_plus_indicator(r2, a, unit_ball)
    assert field_min_norm(constrained, r2.point([1, 0])) == pytest.approx(2.0)
    assert field_min_norm(constrained, r2.point([0, 0])) == pytest.approx(math.sqrt(8.0))
    assert field_min_norm(constrained, r2.point([1 / math.sqrt(2), 1 / math.sqrt(2)])) < 1e-6
    assert field_min_norm(constrained, r2.point([3, 0])) == math.inf


def test_min_norm_halfspace_boundary(r2):
    constrained = quadratic_plus_indicator(r2, r2.point([3, 1]), HalfSpace(normal=(1.0, 0.0), offset=1.0))
    assert field_min_norm(constrained, r2.point([1, 1])) == pytest.approx(0.0, abs=1e-9)
    assert field_min_norm(constrained, r2.point([1, 4])) == pytest.approx(3.0)


def test_min_norm_falls_back_to_yosida(r1):
    # resolvent of the quadratic field at 0 on the line
    field = MonotoneField(
        name="line",
        space=r1,
        resolvent_oracle=lambda lam, x, tol, max_iter: r1.point([x.coords[0] / (1.0 + lam)]),
    )
    assert field_min_norm(field, r1.point([2.0])) == pytest.approx(2.0, rel=1e-5)


def test_complementary_min_norm(r2):
    field = complementary(r2, "reflection")
    assert field_min_norm(field, r2.point([1, 1])) == pytest.approx(2.0 * math.sqrt(2.0))


# ----------------------------------------------------------------------
# Subgradients and the Fermat rule
# ----------------------------------------------------------------------

def test_subgradient_inequality_on_samples(h2, rng):
    functional = quadratic_functional(h2, h2.point([0.4, -0.2]))
    field = quadratic(h2, h2.point([0.4, -0.2]))
    for seed in range(20):
        pair = field.graph_sampler(seed)
        x = h2.sample_point(rng)
        assert subgradient_residual(functional, pair, x) >= -1e-9


def test_fermat_rule_for_closed_form_prox(cat0_space, rng):
    functional = quadratic_functional(cat0_space, cat0_space.sample_point(rng))
    x = cat0_space.sample_point(rng)
    p_bar = prox(functional, 0.7, x)
    for _ in range(10):
        assert fermat_residual(functional, 0.7, x, p_bar, cat0_space.sample_point(rng)) >= -1e-12


def test_quadratic_is_geodesically_convex(cat0_space, rng):
    functional = quadratic_functional(cat0_space, cat0_space.sample_point(rng))
    for t in np.linspace(0.0, 1.0, 7):
        x, y = cat0_space.sample_point(rng), cat0_space.sample_point(rng)
        assert convexity_residual(functional, x, y, float(t)) >= -1e-9
