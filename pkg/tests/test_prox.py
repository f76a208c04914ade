"""
Generic prox solvers against the closed forms they stand in for.
"""

from dataclasses import replace

import pytest

from core.exceptions import DomainError, UnsupportedSet
from core.fields import (
    generic_prox,
    prox,
    quadratic_functional,
    quadratic_plus_indicator,
    quadratic_plus_indicator_functional,
)
from core.spaces import Ball, HalfSpace, Subtree


def _without_closed_form(functional):
    return replace(functional, prox_oracle=None)


@pytest.mark.parametrize("lam", [0.1, 1.0, 5.0])
def test_descent_prox_matches_euclidean_closed_form(r2, lam):
    functional = quadratic_functional(r2, r2.point([1.0, -2.0]))
    x = r2.point([3.0, 0.5])
    closed = prox(functional, lam, x)
    generic = generic_prox(_without_closed_form(functional), lam, x)
    assert r2.distance(closed, generic) < 1e-6


@pytest.mark.parametrize("lam", [0.3, 2.0])
def test_descent_prox_matches_hyperbolic_closed_form(h2, lam):
    functional = quadratic_functional(h2, h2.point([0.8, -0.4]))
    x = h2.point([-0.6, 1.1])
    closed = prox(functional, lam, x)
    generic = generic_prox(_without_closed_form(functional), lam, x)
    assert h2.distance(closed, generic) < 1e-6


def test_tree_prox_matches_closed_form(random_tree, rng):
    anchor = random_tree.sample_point(rng)
    functional = quadratic_functional(random_tree, anchor)
    for lam in (0.2, 1.0, 4.0):
        x = random_tree.sample_point(rng)
        closed = prox(functional, lam, x)
        generic = generic_prox(_without_closed_form(functional), lam, x)
        assert random_tree.distance(closed, generic) < 1e-6


def test_block_prox_matches_closed_form(line_times_tripod, r1, tripod):
    space = line_times_tripod
    anchor = space.point(r1.point([-1.0]), tripod.vertex("b"))
    functional = quadratic_functional(space, anchor)
    x = space.point(r1.point([2.0]), tripod.point_on_edge("hub", "c", 0.5))
    closed = prox(functional, 1.5, x)
    generic = generic_prox(_without_closed_form(functional), 1.5, x)
    assert space.distance(closed, generic) < 1e-6


def test_projected_descent_with_ball_constraint(r2):
    functional = quadratic_plus_indicator_functional(r2, r2.point([2.0, 2.0]), Ball(r2.point([0, 0]), 1.0))
    x = r2.point([3.0, 0.0])
    for lam in (0.5, 1.0, 10.0):
        closed = prox(functional, lam, x)
        generic = generic_prox(_without_closed_form(functional), lam, x)
        assert r2.distance(closed, generic) < 1e-6


def test_projected_descent_with_halfspace_constraint(r2):
    functional = quadratic_plus_indicator_functional(
        r2, r2.point([3.0, 1.0]), HalfSpace(normal=(1.0, 1.0), offset=1.0)
    )
    x = r2.point([0.0, 4.0])
    closed = prox(functional, 2.0, x)
    generic = generic_prox(_without_closed_form(functional), 2.0, x)
    assert r2.distance(closed, generic) < 1e-6


def test_tree_prox_on_a_subtree_domain(tripod):
    field = quadratic_plus_indicator(tripod, tripod.vertex("c"), Subtree(vertices=("hub", "a")))
    assert field.resolvent(1.0, tripod.vertex("b")) == tripod.vertex("hub")
    inside = field.resolvent(0.5, tripod.point_on_edge("hub", "a", 0.9))
    assert tripod.distance(inside, tripod.point_on_edge("hub", "a", 4.0 / 15.0)) < 1e-6


def test_tree_prox_on_a_single_vertex(tripod):
    field = quadratic_plus_indicator(tripod, tripod.vertex("c"), Subtree(vertices=("a",)))
    assert field.resolvent(3.0, tripod.vertex("b")) == tripod.vertex("a")


def test_tree_prox_rejects_other_domains(tripod):
    field = quadratic_plus_indicator(tripod, tripod.vertex("c"), Ball(tripod.vertex("hub"), 0.5))
    with pytest.raises(UnsupportedSet):
        field.resolvent(1.0, tripod.vertex("a"))


def test_prox_requires_positive_lambda(r2):
    functional = quadratic_functional(r2, r2.point([0, 0]))
    with pytest.raises(DomainError):
        prox(functional, -1.0, r2.point([1, 0]))
