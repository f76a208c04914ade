"""
yosida: ||A_lam x|| against |Ax| over the lambda schedule.

The same seeded points are used for every lambda; max_excess is the largest
||A_lam x|| - |Ax| seen.
"""

import logging
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import FIRST_CHECK_STREAM, ExperimentContext, guarded, map_rows, safe_max
from core.fields.monotonicity import field_min_norm
from core.resolvent.engine import yosida

logger = logging.getLogger(__name__)

COLUMNS = ["lambda", "n_samples", "max_excess", "flag"]


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    space = ctx.space
    n = ctx.run.samples
    tol = ctx.tolerance(1e-8)

    rng = ctx.rng(FIRST_CHECK_STREAM)
    points = [space.sample_point(rng, ctx.run.scale) for _ in range(n)]
    norms = guarded(lambda: [field_min_norm(field, x) for x in points], "minimal norms")

    table = ArtifactTable(name="yosida", columns=COLUMNS)

    def evaluate(lam: float):
        if norms is None:
            return table.failed_row(**{"lambda": lam, "n_samples": n})
        excess = guarded(
            lambda: safe_max(yosida(field, lam, x).norm_value - norm for x, norm in zip(points, norms)),
            f"Yosida at lambda={lam:g}",
        )
        if excess is None:
            return table.failed_row(**{"lambda": lam, "n_samples": n})
        return {"lambda": lam, "n_samples": n, "max_excess": excess, "flag": int(not excess <= tol)}

    table.rows = map_rows(evaluate, ctx.run.lambdas, ctx.workers)
    table.metadata = {"samples": n}
    return [table]
