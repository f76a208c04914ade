"""
prox: sampled checks of the configured field and its resolvent.

Rows share the axioms column contract; each residual is oriented so that
values >= 0 are correct.
"""

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.artifacts import ArtifactTable
from app.commands.common import FIRST_CHECK_STREAM, ExperimentContext, guarded, map_rows, safe_min
from core.fields.base import MonotoneField
from core.fields.monotonicity import sample_monotonicity
from core.resolvent.engine import (
    firm_inequality_residual,
    firm_nonexpansiveness_profile,
    fixed_point_residual,
    nonexpansive_residual,
    resolvent_identity_residual,
)
from core.seeding import derive_seed
from core.spaces.convex import project_convex, projection_residual

logger = logging.getLogger(__name__)

COLUMNS = ["check", "n_samples", "min_residual", "flag"]
LOG_LAMBDA_RANGE = (-1.0, 1.0)


def sample_lambda(rng: np.random.Generator) -> float:
    return float(10.0 ** rng.uniform(*LOG_LAMBDA_RANGE))


def sample_mu(rng: np.random.Generator, lam: float) -> float:
    """mu in (0, lam]"""
    return lam * (1.0 - float(rng.uniform()))


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    space = ctx.space
    scale = ctx.run.scale
    n = ctx.run.samples
    base_tol = ctx.tolerance(1e-9)

    def pair(rng):
        return space.sample_point(rng, scale), space.sample_point(rng, scale)

    def nonexpansive(rng) -> float:
        x, y = pair(rng)
        return nonexpansive_residual(field, sample_lambda(rng), x, y)

    def firm(rng) -> float:
        x, y = pair(rng)
        return firm_inequality_residual(field, sample_lambda(rng), x, y)

    def profile(rng) -> float:
        x, y = pair(rng)
        values = [phi for _, phi in firm_nonexpansiveness_profile(field, sample_lambda(rng), x, y)]
        return min(a - b for a, b in zip(values, values[1:]))

    def identity(rng) -> float:
        lam = sample_lambda(rng)
        mu = sample_mu(rng, lam)
        return -resolvent_identity_residual(field, lam, mu, space.sample_point(rng, scale))

    checks: List[Tuple[str, Callable[[np.random.Generator], float], float]] = [
        ("resolvent_nonexpansive", nonexpansive, base_tol),
        ("firm_inequality", firm, ctx.tolerance(1e-8)),
        ("firm_profile", profile, base_tol),
        ("resolvent_identity", identity, ctx.tolerance(1e-8)),
    ]
    if field.has_zero_set:
        def fixed_points(rng) -> float:
            zero = field.nearest_zero(space.sample_point(rng, scale))
            return -fixed_point_residual(field, sample_lambda(rng), zero)
        checks.append(("zeros_are_fixed", fixed_points, ctx.tolerance(1e-8)))
    if ctx.convex_set is not None:
        convex_set = ctx.convex_set

        def projection(rng) -> float:
            x = space.sample_point(rng, scale)
            w = project_convex(space, convex_set, space.sample_point(rng, scale))
            return projection_residual(space, convex_set, x, w)
        checks.append(("projection", projection, ctx.tolerance(1e-8)))

    table = ArtifactTable(name="prox", columns=COLUMNS)

    def evaluate(indexed) -> Dict:
        index, (name, sample, tol) = indexed
        rng = ctx.rng(FIRST_CHECK_STREAM + index)
        value = guarded(lambda: safe_min(sample(rng) for _ in range(n)), f"check {name}")
        if value is None:
            return table.failed_row(check=name, n_samples=n)
        return {"check": name, "n_samples": n, "min_residual": value, "flag": int(not value >= -tol)}

    rows = map_rows(evaluate, list(enumerate(checks)), ctx.workers)
    rows.insert(0, _monotonicity_row(ctx, field, table, n, base_tol))
    table.rows = rows
    table.metadata = {"samples": n, "scale": scale}
    return [table]


def _monotonicity_row(ctx: ExperimentContext, field: MonotoneField, table: ArtifactTable,
                      n: int, tol: float) -> Dict:
    """-(g_p(u, gamma_pq) + g_q(v, gamma_qp)) over sampled graph pairs"""
    seed = derive_seed(ctx.rng(FIRST_CHECK_STREAM - 1))
    residuals = guarded(lambda: sample_monotonicity(field, n, seed), "check monotonicity")
    if residuals is None:
        return table.failed_row(check="monotonicity", n_samples=n)
    value = safe_min(-r for r in residuals)
    return {"check": "monotonicity", "n_samples": n, "min_residual": value, "flag": int(not value >= -tol)}
