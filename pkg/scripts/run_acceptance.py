#!/usr/bin/env python3
"""
Full-size acceptance run.

Checks the CAT(0) inequalities, the exponential formula and its error
bound, the resolvent properties, both resolvent limits, the
double-sequence estimate, the semigroup law and trajectory Fejer/Delta
behaviour at full sample sizes, then (optionally) replays every shipped
experiment config through the CLI.

    python scripts/run_acceptance.py
    python scripts/run_acceptance.py --only 3 7 --seed 11
    python scripts/run_acceptance.py --with-configs --out results/acceptance

Exits 0 only when every selected check passes.
"""

import argparse
import logging
import math
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.core.config import ExperimentKind, load_experiment_config
from app.core.exceptions import EXIT_OK, handle_cli_exception
from app.main import configure_logging, run_experiment
from core.exceptions import CatFlowError
from core.fields import (
    MonotoneField,
    complementary,
    field_min_norm,
    indicator,
    quadratic,
    quadratic_plus_indicator,
)
from core.geometry import GeodesicSpace, Point, cn_residual, quad_residual
from core.resolvent import (
    firm_nonexpansiveness_profile,
    resolvent_identity_residual,
    resolvent_limit_infinity,
    resolvent_limit_zero,
    yosida,
)
from core.seeding import stream
from core.semigroup import (
    delta_convergence_check,
    double_seq_verify,
    error_table,
    exp_formula,
    fejer_flags,
    semigroup_law_bound,
    semigroup_law_residual,
    trajectory,
)
from core.spaces import Ball, make_space

logger = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config" / "experiments"
POW2_KS = [2 ** i for i in range(9)]
LAMBDA_DECADES = [10.0 ** e for e in range(-3, 4)]
MU_SCHEDULE = [0.25, 0.5, 0.125, 0.5, 0.25, 0.375, 0.5, 0.0625]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0


# ----------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------

def model_spaces() -> Dict[str, GeodesicSpace]:
    return {
        "R^3": make_space("euclidean", dimension=3),
        "H^2": make_space("hyperbolic", dimension=2),
        "random tree": make_space("tree", random_vertices=20, random_seed=7),
        "R x tripod": make_space("product", factors=[
            {"kind": "euclidean", "dimension": 1},
            {"kind": "tree", "tripod": [1.0, 1.0, 1.0]},
        ]),
    }


def anchor_for(name: str, space: GeodesicSpace) -> Point:
    """Anchor of the quadratic field; trees use a branch vertex"""
    if name == "random tree":
        graph = space.graph
        return space.vertex(max(sorted(graph.nodes), key=graph.degree))
    if name == "R x tripod":
        return space.point(space.first.point([0.0]), space.second.vertex("hub"))
    if name == "H^2":
        return space.origin()
    return space.point([0.0] * space.dimension)


def plane_fields() -> Tuple[GeodesicSpace, Dict[str, MonotoneField]]:
    r2 = make_space("euclidean", dimension=2)
    unit_ball = Ball(r2.point([0.0, 0.0]), 1.0)
    return r2, {
        "quadratic": quadratic(r2, r2.point([0.5, -0.3])),
        "indicator": indicator(r2, unit_ball),
        "quadratic_plus_indicator": quadratic_plus_indicator(r2, r2.point([2.0, 2.0]), unit_ball),
        "complementary(rotation)": complementary(r2, "rotation", {"theta": 0.7}),
        "complementary(reflection)": complementary(r2, "reflection"),
    }


def log_uniform(rng, low: float = -1.0, high: float = 1.0) -> float:
    return float(10.0 ** rng.uniform(low, high))


# ----------------------------------------------------------------------
# Checks
# ----------------------------------------------------------------------

def check_axioms(seed: int) -> Tuple[bool, str]:
    worst = []
    for index, (name, space) in enumerate(model_spaces().items()):
        rng = stream(seed, index)
        cn, quad = math.inf, math.inf
        for _ in range(10_000):
            x, y, u, v = (space.sample_point(rng) for _ in range(4))
            cn = min(cn, cn_residual(space, space.geodesic(x, y), v, float(rng.uniform())))
            quad = min(quad, quad_residual(space, x, y, u, v))
        worst.append((name, cn, quad))
    passed = all(cn >= -1e-9 and quad >= -1e-9 for _, cn, quad in worst)
    return passed, "; ".join(f"{name}: cn {cn:.2e}, quad {quad:.2e}" for name, cn, quad in worst)


def check_euclidean_flow(seed: int) -> Tuple[bool, str]:
    r1 = make_space("euclidean", dimension=1)
    field = quadratic(r1, r1.point([0.0]))
    x = r1.point([1.0])
    worst = 0.0
    for t in (0.5, 1.0, 2.0):
        for k in (1, 4, 16, 64, 256):
            worst = max(worst, abs(exp_formula(field, x, t, k).coords[0] - (1.0 + t / k) ** -k))
    return worst <= 1e-10, f"max deviation from (1+t/k)^-k: {worst:.2e}"


def check_error_bound(seed: int) -> Tuple[bool, str]:
    failures = []
    for index, (name, space) in enumerate(model_spaces().items()):
        field = quadratic(space, anchor_for(name, space))
        x = space.sample_point(stream(seed, index))
        for t in (0.5, 1.0, 2.0):
            table = error_table(field, x, t, POW2_KS, k_ref=8192)
            if not table.passed:
                failures.append(f"{name} t={t}")
    return not failures, "all tables within bound" if not failures else f"failed: {', '.join(failures)}"


def check_resolvent_identity(seed: int) -> Tuple[bool, str]:
    space, fields = plane_fields()
    worst = {}
    for index, (name, field) in enumerate(fields.items()):
        rng = stream(seed, index)
        value = 0.0
        for _ in range(1000):
            lam = log_uniform(rng)
            mu = lam * (1.0 - float(rng.uniform()))
            value = max(value, resolvent_identity_residual(field, lam, mu, space.sample_point(rng, 2.0)))
        worst[name] = value
    return all(v <= 1e-8 for v in worst.values()), _summary(worst)


def check_firm_profiles(seed: int) -> Tuple[bool, str]:
    space, fields = plane_fields()
    worst = {}
    for index, (name, field) in enumerate(fields.items()):
        rng = stream(seed, index)
        value = 0.0
        for _ in range(100):
            x, y = space.sample_point(rng, 2.0), space.sample_point(rng, 2.0)
            phis = [phi for _, phi in firm_nonexpansiveness_profile(field, log_uniform(rng), x, y)]
            value = max(value, max(later - earlier for earlier, later in zip(phis, phis[1:])))
        worst[name] = value
    return all(v <= 1e-9 for v in worst.values()), _summary(worst)


def check_yosida_bound(seed: int) -> Tuple[bool, str]:
    space, fields = plane_fields()
    worst = {}
    for index, (name, field) in enumerate(fields.items()):
        rng = stream(seed, index)
        points = [space.sample_point(rng, 2.0) for _ in range(100)]
        norms = [field_min_norm(field, x) for x in points]
        worst[name] = max(
            yosida(field, lam, x).norm_value - norm
            for lam in LAMBDA_DECADES
            for x, norm in zip(points, norms)
        )
    return all(v <= 1e-8 for v in worst.values()), _summary(worst)


def check_resolvent_limits(seed: int) -> Tuple[bool, str]:
    space, fields = plane_fields()
    field = fields["quadratic_plus_indicator"]
    x = space.point([3.0, 0.0])
    up = [10.0 ** e for e in range(-6, 7)]
    zero = resolvent_limit_zero(field, x, list(reversed(up)))
    infinity = resolvent_limit_infinity(field, x, up)
    trending = all(
        not any(fejer_flags([row.distance for row in scan.rows], 1e-9))
        for scan in (zero, infinity)
    )
    passed = zero.final_distance <= 1e-5 and infinity.final_distance <= 1e-5 and trending
    return passed, (
        f"lambda->0: {zero.final_distance:.2e}, lambda->inf: {infinity.final_distance:.2e}, "
        f"monotone trend: {trending}"
    )


def check_double_sequences(seed: int) -> Tuple[bool, str]:
    r1 = make_space("euclidean", dimension=1)
    tripod = make_space("tree", tripod=[1.0, 1.0, 1.0])
    cases = {
        "R^1": (quadratic(r1, r1.point([0.0])), r1.point([1.0])),
        "tripod": (quadratic(tripod, tripod.vertex("hub")), tripod.point_on_edge("hub", "a", 0.8)),
    }
    worst = {
        name: double_seq_verify(field, x, 0.5, MU_SCHEDULE, 8, 8).max_violation
        for name, (field, x) in cases.items()
    }
    return all(v <= 1e-7 for v in worst.values()), _summary(worst)


def check_semigroup_law(seed: int) -> Tuple[bool, str]:
    space, fields = plane_fields()
    x = space.point([0.3, 0.2])
    failures = []
    for name, field in fields.items():
        norm = field_min_norm(field, x)
        for s in (0.5, 1.0):
            for t in (0.5, 1.0):
                residual = semigroup_law_residual(field, x, s, t, 4096)
                if not residual <= semigroup_law_bound(norm, s, t, 4096) + 1e-12:
                    failures.append(f"{name} s={s} t={t}")
    return not failures, "all within envelope" if not failures else f"failed: {', '.join(failures)}"


def check_trajectories(seed: int) -> Tuple[bool, str]:
    details, passed = [], True
    for index, (name, space) in enumerate(model_spaces().items()):
        a = anchor_for(name, space)
        field = quadratic(space, a)
        x = space.sample_point(stream(seed, index))
        flow = trajectory(field, x, [0.0, 0.5, 1.0, 2.0], target_tol=0.1)
        fejer = not any(fejer_flags(flow.distances, 1e-7))
        tail = [exp_formula(field, x, float(t), 2048) for t in range(20, 31)]
        report = delta_convergence_check(space, tail, a, field=field)
        ok = fejer and report.center_distance <= 1e-4
        passed = passed and ok
        details.append(f"{name}: fejer {fejer}, center {report.center_distance:.1e}")
    return passed, "; ".join(details)


CHECKS: List[Tuple[str, Callable[[int], Tuple[bool, str]]]] = [
    ("CAT(0) inequalities on the model spaces", check_axioms),
    ("Exponential formula on the line", check_euclidean_flow),
    ("Generation error bound", check_error_bound),
    ("Resolvent identity", check_resolvent_identity),
    ("Firm nonexpansiveness profiles", check_firm_profiles),
    ("Yosida norm bound", check_yosida_bound),
    ("Resolvent limits", check_resolvent_limits),
    ("Double-sequence estimate", check_double_sequences),
    ("Semigroup law", check_semigroup_law),
    ("Fejer and Delta behaviour of trajectories", check_trajectories),
]


def _summary(values: Dict[str, float]) -> str:
    return ", ".join(f"{name} {value:.2e}" for name, value in values.items())


def run_checks(seed: int, only: Optional[List[int]] = None) -> List[CheckResult]:
    results = []
    for number, (title, check) in enumerate(CHECKS, start=1):
        if only and number not in only:
            continue
        started = time.perf_counter()
        try:
            passed, detail = check(seed)
        except (CatFlowError, ArithmeticError) as exc:
            logger.debug(f"check {number} traceback", exc_info=True)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(number, title, passed, detail, time.perf_counter() - started))
        logger.info(f"[{number}] {title}: {'passed' if passed else 'FAILED'}")
    return results


# ----------------------------------------------------------------------
# Shipped configs
# ----------------------------------------------------------------------

def kind_for(path: Path) -> Optional[ExperimentKind]:
    # longest name first so that error_table_* is not matched by a shorter kind
    for kind in sorted(ExperimentKind, key=lambda k: len(k.value), reverse=True):
        if path.stem.startswith(kind.value.replace("-", "_")):
            return kind
    return None


def run_configs(out_dir: Path, seed: Optional[int]) -> List[Tuple[str, int]]:
    results = []
    for path in sorted(CONFIG_DIR.glob("*.ini")):
        kind = kind_for(path)
        if kind is None:
            logger.warning(f"Skipping {path.name}: no experiment kind in its name")
            continue
        try:
            config = load_experiment_config(path, kind)
            code = run_experiment(config, seed=seed, out_dir=str(out_dir / path.stem))
        except Exception as exc:
            code = handle_cli_exception(exc)
        results.append((path.name, code))
    return results


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Full-size acceptance checks")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--only", type=int, nargs="*", default=None, help="check numbers to run")
    parser.add_argument("--with-configs", action="store_true", help="also replay config/experiments/*.ini")
    parser.add_argument("--out", type=Path, default=Path("results") / "acceptance")
    parser.add_argument("--log-level", default="WARNING")
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    print("🔍 catflow acceptance")
    print("=" * 60)
    results = run_checks(args.seed, args.only)
    for result in results:
        mark = "✅" if result.passed else "❌"
        print(f"{mark} [{result.number:2d}] {result.title} ({result.elapsed:.1f}s)")
        print(f"       {result.detail}")

    config_codes = []
    if args.with_configs:
        print("=" * 60)
        config_codes = run_configs(args.out, None)
        for name, code in config_codes:
            print(f"{'✅' if code == EXIT_OK else '❌'} {name}: exit {code}")

    failed = [r for r in results if not r.passed] + [c for c in config_codes if c[1] != EXIT_OK]
    print("=" * 60)
    if failed:
        print(f"❌ FAILED: {len(failed)} check(s)")
        return 1
    print(f"✅ SUCCESS: {len(results) + len(config_codes)} check(s) passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
