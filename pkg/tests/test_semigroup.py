"""
Semigroup generation: the exponential formula, its a priori error bound,
adaptive step counts and the double-sequence estimate.
"""

import math

import pytest

from config.settings import settings
from core.exceptions import DomainError, NoNormBound, ScheduleError, TargetUnreachable
from core.fields import MonotoneField, indicator, quadratic
from core.semigroup import (
    FlowRequest,
    adaptive_steps,
    cauchy_residual,
    composition_residual,
    double_seq_bound,
    double_seq_verify,
    error_bound,
    error_table,
    exp_formula,
    flow_nonexpansive_residual,
    run_flow,
    semigroup,
    semigroup_law_bound,
    semigroup_law_residual,
    trajectory,
    uniformity_scan,
)
from core.spaces import Ball

MU_SCHEDULE = [0.25, 0.5, 0.125, 0.5, 0.25, 0.375, 0.5, 0.0625]


@pytest.fixture
def line_field(r1):
    """Quadratic field at 0 on the line: J_lam x = x / (1 + lam), S(t)x = exp(-t) x"""
    return quadratic(r1, r1.point([0.0]))


# ----------------------------------------------------------------------
# Exponential formula
# ----------------------------------------------------------------------

@pytest.mark.parametrize("t,k", [(1.0, 1), (1.0, 16), (2.5, 256)])
def test_exp_formula_closed_form(line_field, r1, t, k):
    z = exp_formula(line_field, r1.point([1.0]), t, k)
    assert z.coords[0] == pytest.approx((1.0 + t / k) ** -k, rel=1e-10)


def test_exp_formula_at_time_zero(line_field, r1):
    x = r1.point([3.0])
    assert exp_formula(line_field, x, 0.0, 8) == x


@pytest.mark.parametrize("t,k", [(-1.0, 4), (1.0, 0)])
def test_exp_formula_arguments(line_field, r1, t, k):
    with pytest.raises(DomainError):
        exp_formula(line_field, r1.point([1.0]), t, k)


def test_error_bound_values():
    assert error_bound(2.0, 1.0, 4) == pytest.approx(2.0)
    assert error_bound(1.0, 3.0, 9) == pytest.approx(2.0)
    assert error_bound(0.0, 5.0, 1) == 0.0
    assert error_bound(7.0, 0.0, 1) == 0.0


def test_adaptive_steps_powers_of_two():
    assert adaptive_steps(1.0, 1.0, 0.1) == 512
    assert adaptive_steps(1.0, 1.0, 2.0) == 1
    assert adaptive_steps(0.0, 10.0, 1e-9) == 1


def test_adaptive_steps_are_capped(caplog):
    assert adaptive_steps(1e6, 1.0, 1e-6) == settings.max_flow_steps
    assert "capped" in caplog.text


def test_adaptive_steps_need_positive_tolerance():
    with pytest.raises(DomainError):
        adaptive_steps(1.0, 1.0, 0.0)


def test_semigroup_meets_its_tolerance(line_field, r1):
    point, k = semigroup(line_field, r1.point([1.0]), 1.0, 0.125)
    assert k == 256
    assert abs(point.coords[0] - math.exp(-1.0)) <= 0.125


def test_semigroup_strict_rejects_an_unreachable_target(line_field, r1):
    with pytest.raises(TargetUnreachable) as excinfo:
        semigroup(line_field, r1.point([100.0]), 5.0, 1e-3, strict=True)
    assert excinfo.value.metadata["k"] == settings.max_flow_steps
    assert excinfo.value.metadata["bound"] > 1e-3

    _, k = semigroup(line_field, r1.point([1.0]), 1.0, 0.125, strict=True)
    assert k == 256


def test_semigroup_at_a_zero(line_field, r1):
    origin = r1.point([0.0])
    assert semigroup(line_field, origin, 5.0, 1e-6) == (origin, 1)


def test_semigroup_needs_a_norm(r1, r2):
    outside = indicator(r2, Ball(r2.point([0, 0]), 1.0))
    with pytest.raises(NoNormBound):
        semigroup(outside, r2.point([3.0, 0.0]), 1.0, 1e-3)

    bare = MonotoneField(
        name="bare",
        space=r1,
        resolvent_oracle=lambda lam, x, tol, max_iter: r1.point([x.coords[0] / (1.0 + lam)]),
    )
    with pytest.raises(NoNormBound):
        semigroup(bare, r1.point([1.0]), 1.0, 1e-3)
    point, k = semigroup(bare, r1.point([1.0]), 1.0, 1e-1, norm_bound=1.0)
    assert k == 512


def test_flow_requests(line_field, r1):
    x = r1.point([1.0])
    point, k = run_flow(FlowRequest(field=line_field, x0=x, t=1.0, k=4))
    assert k == 4
    assert point.coords[0] == pytest.approx(1.25 ** -4)
    _, k = run_flow(FlowRequest(field=line_field, x0=x, t=1.0, target_tol=0.1))
    assert k == 512
    with pytest.raises(DomainError):
        FlowRequest(field=line_field, x0=x, t=1.0)


# ----------------------------------------------------------------------
# Error tables and Cauchy-type checks
# ----------------------------------------------------------------------

def test_error_table_within_bounds(line_field, r1):
    ks = [2 ** i for i in range(9)]
    table = error_table(line_field, r1.point([1.0]), 1.0, ks, k_ref=8192)
    assert table.passed
    assert [row.k for row in table.rows] == ks
    assert table.min_norm == pytest.approx(1.0)
    assert table.rows[0].bound == pytest.approx(2.0)
    errors = [row.error for row in table.rows]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
    assert table.to_dict()['metadata']['k_ref'] == 8192


def test_error_table_is_independent_of_workers(line_field, r1):
    ks = [64, 1, 16, 4]
    serial = error_table(line_field, r1.point([2.0]), 0.5, ks, k_ref=1024)
    threaded = error_table(line_field, r1.point([2.0]), 0.5, ks, k_ref=1024, workers=3)
    assert serial.to_dict() == threaded.to_dict()


def test_cauchy_residuals_shrink(h2):
    field = quadratic(h2, h2.point([0.3, -0.4]))
    x = h2.point([1.0, 1.0])
    residuals = [cauchy_residual(field, x, 1.0, k) for k in (4, 16, 64)]
    assert residuals[0] > residuals[1] > residuals[2]


def test_uniformity_scan_starts_at_zero(line_field, r1):
    rows = uniformity_scan(line_field, r1.point([1.0]), 2.0, 8, n_points=5, k_ref=512)
    assert [t for t, _ in rows] == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert rows[0][1] == 0.0
    assert all(error <= error_bound(1.0, t, 8) + 1e-8 for t, error in rows)


def test_discrete_flow_is_nonexpansive(cat0_space, rng):
    field = quadratic(cat0_space, cat0_space.sample_point(rng))
    x, y = cat0_space.sample_point(rng), cat0_space.sample_point(rng)
    assert flow_nonexpansive_residual(field, x, y, 1.5, 16) >= -1e-12


def test_composition_of_discrete_flows(h2):
    field = quadratic(h2, h2.origin())
    assert composition_residual(field, h2.point([1.0, -0.5]), 0.5, 8, 3) < 1e-12


def test_semigroup_law(r2):
    field = quadratic(r2, r2.point([1.0, 0.0]))
    x = r2.point([0.0, 3.0])
    residual = semigroup_law_residual(field, x, 0.4, 0.7, 4096)
    assert residual <= semigroup_law_bound(math.sqrt(10.0), 0.4, 0.7, 4096)


# ----------------------------------------------------------------------
# Double sequences
# ----------------------------------------------------------------------

def test_double_seq_bound_values():
    assert double_seq_bound(1.0, [0.5, 0.5], 0, 0) == 0.0
    assert double_seq_bound(1.0, [0.5, 0.5], 2, 1) == pytest.approx(2.0)
    assert double_seq_bound(1.0, [0.5, 0.5], 0, 1) == pytest.approx(math.sqrt(2.0) + 1.0)


def test_double_seq_estimate_holds(line_field, r1):
    result = double_seq_verify(line_field, r1.point([1.0]), 0.5, MU_SCHEDULE, 8, 8)
    assert len(result.rows) == 81
    assert result.min_norm == pytest.approx(1.0)
    assert result.max_violation <= 1e-7


@pytest.mark.parametrize("lam,schedule,j_max", [
    (0.5, [0.25, 0.75], 2),
    (0.5, [0.25, 0.0], 2),
    (0.0, [0.25], 1),
    (0.5, [0.25, 0.5], 3),
])
def test_double_seq_schedule_validation(line_field, r1, lam, schedule, j_max):
    with pytest.raises(ScheduleError):
        double_seq_verify(line_field, r1.point([1.0]), lam, schedule, j_max, 2)


# ----------------------------------------------------------------------
# Trajectories
# ----------------------------------------------------------------------

def test_trajectory_approaches_the_zero_set(tripod):
    field = quadratic(tripod, tripod.vertex("hub"))
    x = tripod.point_on_edge("hub", "a", 0.8)
    result = trajectory(field, x, [0.0, 0.25, 0.5, 1.0, 2.0, 4.0], target_tol=0.1)
    assert result.k_used[0] == 1
    assert result.distances[0] == pytest.approx(0.8)
    assert all(b <= a + 1e-12 for a, b in zip(result.distances, result.distances[1:]))
    assert result.distances[-1] == pytest.approx(0.8 * math.exp(-4.0), abs=0.1)


def test_trajectory_times_must_increase(line_field, r1):
    with pytest.raises(DomainError):
        trajectory(line_field, r1.point([1.0]), [0.0, 2.0, 1.0], target_tol=0.1)


def test_trajectory_records_a_priori_bounds(line_field, r1):
    result = trajectory(line_field, r1.point([1.0]), [0.0, 1.0], target_tol=0.125)
    assert result.k_used == [1, 256]
    assert result.bounds == pytest.approx([0.0, 0.125])
    assert result.missed_target == [False, False]


def test_trajectory_marks_times_the_step_cap_cannot_reach(line_field, r1, monkeypatch):
    monkeypatch.setattr(settings, "max_flow_steps", 64)
    result = trajectory(line_field, r1.point([100.0]), [0.0, 5.0, 10.0], target_tol=1e-3)
    assert result.k_used == [1, 64, 64]
    # |Ax| = 100, so the bound at the cap is 100 * 2t / 8
    assert result.bounds == pytest.approx([0.0, 125.0, 250.0])
    assert result.missed_target == [False, True, True]
    assert result.to_dict()["missed_target"] == [False, True, True]
