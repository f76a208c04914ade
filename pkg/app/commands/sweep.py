"""
sweep: J_lam x along the lambda schedule.

dist_to_limit is the distance to the projection onto the zero set when the
field has one, otherwise to the resolvent at the largest lambda. A row is
flagged when the step from the previous lambda breaks the continuity
estimate rho(J_mu x, J_lam x) <= (1 - mu/lam) rho(x, J_lam x), or when the
resolvent failed.
"""

import logging
import math
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import ExperimentContext, guarded, map_rows
from core.resolvent.engine import resolvent

logger = logging.getLogger(__name__)

COLUMNS = ["lambda", "dist_to_limit", "flag"]


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    space = ctx.space
    x = ctx.x
    schedule = ctx.run.lambdas
    tol = ctx.tolerance(1e-8)

    points = map_rows(
        lambda lam: guarded(lambda: resolvent(field, lam, x), f"J_{lam:g}"),
        schedule,
        ctx.workers,
    )
    if field.has_zero_set:
        target, mode = field.nearest_zero(x), "reference"
    else:
        target, mode = points[-1], "cauchy"
        logger.warning(f"{field.name} has no zero-set witness; distances are to J at lambda={schedule[-1]:g}")

    table = ArtifactTable(name="sweep", columns=COLUMNS)
    previous = None
    for lam, point in zip(schedule, points):
        if point is None or target is None:
            table.rows.append(table.failed_row(**{"lambda": lam}))
            previous = None
            continue
        flag = 0
        if previous is not None:
            mu, j_mu = previous
            bound = (1.0 - mu / lam) * space.distance(x, point)
            step = space.distance(j_mu, point)
            flag = int(not step <= bound + tol)
        distance = space.distance(point, target)
        table.rows.append({"lambda": lam, "dist_to_limit": distance, "flag": flag if not math.isnan(distance) else 1})
        previous = (lam, point)

    table.metadata = {"mode": mode, "x": repr(x.coords)}
    return [table]
