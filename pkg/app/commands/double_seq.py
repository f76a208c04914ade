"""
double-seq: the double-sequence estimate for mixed resolvent steps.

Without a configured mu_schedule, j_max steps of lam/2 are used.
"""

import logging
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import ExperimentContext, guarded
from core.semigroup.generation import double_seq_verify

logger = logging.getLogger(__name__)

COLUMNS = ["j", "k", "a_tilde", "bound", "flag"]


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    run_section = ctx.run
    lam = run_section.lam
    mu_schedule = run_section.mu_schedule or [lam / 2.0] * run_section.j_max
    tol = ctx.tolerance(1e-7)
    x = ctx.x

    table = ArtifactTable(name="double_seq", columns=COLUMNS)
    result = guarded(
        lambda: double_seq_verify(
            field,
            x,
            lam,
            mu_schedule,
            run_section.j_max,
            run_section.k_max,
            norm_bound=run_section.norm_bound,
        ),
        "double-sequence check",
    )
    if result is None:
        table.rows = [
            table.failed_row(j=j, k=k)
            for j in range(run_section.j_max + 1)
            for k in range(run_section.k_max + 1)
        ]
        return [table]

    for row in result.rows:
        table.rows.append({
            "j": row.j,
            "k": row.k,
            "a_tilde": row.a_tilde,
            "bound": row.bound,
            "flag": int(not row.violation <= tol),
        })
    table.metadata = {
        "lambda": lam,
        "mu_schedule": list(mu_schedule),
        "min_norm": result.min_norm,
        "max_violation": result.max_violation,
        "x": repr(x.coords),
    }
    return [table]
