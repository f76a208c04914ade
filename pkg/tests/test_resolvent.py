"""
Resolvent engine: J_lam, its structural residuals, Yosida approximations
and the limits in lam.
"""

import math

import pytest

from core.exceptions import DomainError, NoExtension, NoZeroSet, ScheduleError
from core.fields import complementary, indicator, quadratic, quadratic_plus_indicator
from core.resolvent import (
    ResolventConfig,
    ScanMode,
    domain_convexity_probe,
    firm_inequality_residual,
    firm_nonexpansiveness_profile,
    fixed_point_residual,
    negative_geodesic_residual,
    nonexpansive_residual,
    resolvent,
    resolvent_continuity_scan,
    resolvent_identity_residual,
    resolvent_limit_infinity,
    resolvent_limit_zero,
    resolvent_power,
    yosida,
    yosida_bound_residual,
)
from core.spaces import Ball

LAMBDAS_UP = [10.0 ** k for k in range(-6, 7)]
LAMBDAS_DOWN = list(reversed(LAMBDAS_UP))


@pytest.fixture
def ball_field(r2):
    """1/2 rho^2(., (2,2)) restricted to the closed unit ball"""
    return quadratic_plus_indicator(r2, r2.point([2.0, 2.0]), Ball(r2.point([0, 0]), 1.0))


# ----------------------------------------------------------------------
# J_lam
# ----------------------------------------------------------------------

def test_zero_lambda_is_the_identity(r2):
    field = quadratic(r2, r2.point([0, 0]))
    x = r2.point([1.5, -2.0])
    assert resolvent(field, 0.0, x) == x


def test_negative_lambda_is_rejected(r2):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(DomainError):
        resolvent(field, -0.5, r2.point([1, 0]))


def test_config_accepts_the_lambda_alias(r1):
    field = quadratic(r1, r1.point([0.0]))
    cfg = ResolventConfig(**{"lambda": 3.0})
    assert resolvent(field, cfg, r1.point([4.0])) == r1.point([1.0])


def test_resolvent_power_on_the_line(r1):
    field = quadratic(r1, r1.point([0.0]))
    z = resolvent_power(field, 0.5, r1.point([1.0]), 6)
    assert z.coords[0] == pytest.approx(1.5 ** -6, rel=1e-12)


def test_resolvents_are_nonexpansive(cat0_space, rng):
    field = quadratic(cat0_space, cat0_space.sample_point(rng))
    for lam in (0.1, 1.0, 10.0):
        x, y = cat0_space.sample_point(rng), cat0_space.sample_point(rng)
        assert nonexpansive_residual(field, lam, x, y) >= -1e-12
        assert firm_inequality_residual(field, lam, x, y) >= -1e-8


def test_complementary_resolvent_is_firm(r2, rng):
    field = complementary(r2, "rotation", {"theta": 2.0})
    for _ in range(20):
        x, y = r2.sample_point(rng), r2.sample_point(rng)
        assert firm_inequality_residual(field, 0.8, x, y) >= -1e-8


def test_firm_profile_is_nonincreasing(h2):
    field = quadratic(h2, h2.point([0.5, 0.5]))
    profile = firm_nonexpansiveness_profile(field, 2.0, h2.point([-1.0, 0.3]), h2.point([1.2, -0.8]))
    values = [value for _, value in profile]
    assert len(values) == 11
    assert all(later <= earlier + 1e-9 for earlier, later in zip(values, values[1:]))


def test_firm_profile_grid_validation(r2):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(DomainError):
        firm_nonexpansiveness_profile(field, 1.0, r2.point([1, 0]), r2.point([0, 1]), grid=[0.0, 0.5])


def test_resolvent_identity(h2):
    field = quadratic(h2, h2.point([0.2, -0.7]))
    x = h2.point([1.4, 0.9])
    assert resolvent_identity_residual(field, 3.0, 0.4, x) < 1e-9
    with pytest.raises(DomainError):
        resolvent_identity_residual(field, 1.0, 2.0, x)


def test_zeros_are_fixed(ball_field, r2):
    zero = ball_field.nearest_zero(r2.point([0, 0]))
    for lam in (0.01, 1.0, 100.0):
        assert fixed_point_residual(ball_field, lam, zero) < 1e-12


# ----------------------------------------------------------------------
# Negative geodesics and Yosida approximations
# ----------------------------------------------------------------------

def test_negative_geodesic_residual_vanishes_in_smooth_spaces(r2, h2):
    assert negative_geodesic_residual(r2, r2.point([0, 0]), r2.point([1, 2]), r2.point([-3, 1])) == \
        pytest.approx(0.0, abs=1e-12)
    residual = negative_geodesic_residual(h2, h2.point([0.1, 0.1]), h2.point([1, -1]), h2.point([-0.5, 2]))
    assert residual == pytest.approx(0.0, abs=1e-9)


def test_yosida_vector(r2):
    field = quadratic(r2, r2.point([0, 0]))
    vec = yosida(field, 1.0, r2.point([2.0, 0.0]))
    assert vec.norm_value == pytest.approx(1.0)
    assert vec.witness == r2.point([3.0, 0.0])
    assert yosida_bound_residual(field, 1.0, r2.point([2.0, 0.0])) == pytest.approx(1.0)


def test_yosida_at_a_zero(r2):
    field = quadratic(r2, r2.point([1, 1]))
    vec = yosida(field, 0.5, r2.point([1, 1]))
    assert vec.zero and vec.norm_value == 0.0


def test_yosida_norm_bound_on_rotation(r2, rng):
    field = complementary(r2, "rotation", {"theta": 0.7})
    for lam in (0.01, 1.0, 100.0):
        assert yosida_bound_residual(field, lam, r2.sample_point(rng)) >= -1e-8


def test_yosida_needs_the_negative_geodesic(tripod):
    field = quadratic(tripod, tripod.vertex("hub"))
    with pytest.raises(NoExtension):
        yosida(field, 1.0, tripod.vertex("a"))


# ----------------------------------------------------------------------
# Limits in lam
# ----------------------------------------------------------------------

def test_small_lambda_limit_is_the_domain_projection(ball_field, r2):
    scan = resolvent_limit_zero(ball_field, r2.point([3.0, 0.0]), LAMBDAS_DOWN)
    assert scan.mode == ScanMode.REFERENCE
    assert scan.target == r2.point([1.0, 0.0])
    assert scan.final_distance < 1e-5


def test_large_lambda_limit_is_the_nearest_zero(ball_field, r2):
    scan = resolvent_limit_infinity(ball_field, r2.point([3.0, 0.0]), LAMBDAS_UP)
    corner = r2.point([1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert r2.distance(scan.target, corner) < 1e-12
    assert scan.final_distance < 1e-5
    assert scan.rows[0].distance > scan.rows[-1].distance


def test_full_domain_small_lambda_limit_is_x(h2):
    field = quadratic(h2, h2.origin())
    x = h2.point([1.0, 1.0])
    scan = resolvent_limit_zero(field, x, LAMBDAS_DOWN)
    assert scan.target == x
    assert scan.final_distance < 1e-5


def test_fields_without_zeros(r2):
    field = complementary(r2, "identity")
    x = r2.point([1.0, 2.0])
    with pytest.raises(NoZeroSet):
        resolvent_limit_infinity(field, x, LAMBDAS_UP)
    scan = resolvent_limit_infinity(field, x, LAMBDAS_UP, strict=False)
    assert scan.mode == ScanMode.CAUCHY
    assert len(scan.rows) == len(LAMBDAS_UP) - 1
    assert scan.final_distance == 0.0


@pytest.mark.parametrize("schedule", [[], [1.0, 0.0], [1.0, 2.0], [1.0, 1.0]])
def test_zero_limit_schedule_must_decrease(r2, schedule):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(ScheduleError):
        resolvent_limit_zero(field, r2.point([1, 1]), schedule)


def test_infinity_limit_schedule_must_increase(r2):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(ScheduleError):
        resolvent_limit_infinity(field, r2.point([1, 1]), LAMBDAS_DOWN)


def test_continuity_scan_respects_the_estimate(ball_field, r2):
    rows = resolvent_continuity_scan(ball_field, r2.point([3.0, 1.0]), (0.0, 5.0), 20)
    assert len(rows) == 20
    assert rows[0].mu == 0.0
    assert all(row.excess <= 1e-10 for row in rows)


def test_continuity_scan_validation(r2):
    field = quadratic(r2, r2.point([0, 0]))
    with pytest.raises(DomainError):
        resolvent_continuity_scan(field, r2.point([1, 0]), (2.0, 1.0), 4)


def test_domain_convexity_probe(r2):
    field = indicator(r2, Ball(r2.point([0, 0]), 1.0))
    probe = domain_convexity_probe(field, r2.point([0.6, 0.0]), r2.point([0.0, -0.9]))
    assert probe.x_residual == 0.0 and probe.y_residual == 0.0
    assert probe.midpoint_residual == 0.0
