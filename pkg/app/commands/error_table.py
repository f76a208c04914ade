"""
error-table: exponential-formula errors against the reference iterate.
"""

import logging
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import ExperimentContext, guarded
from core.semigroup.generation import error_table

logger = logging.getLogger(__name__)

COLUMNS = ["k", "error", "bound", "flag"]


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    run_section = ctx.run
    x = ctx.x
    ks = sorted(run_section.ks)

    result = guarded(
        lambda: error_table(
            field,
            x,
            run_section.t,
            ks,
            k_ref=run_section.k_ref,
            workers=ctx.workers,
            norm_bound=run_section.norm_bound,
        ),
        "error table",
    )
    table = ArtifactTable(name="error_table", columns=COLUMNS)
    if result is None:
        table.rows = [table.failed_row(k=k) for k in ks]
        return [table]

    document = result.to_dict()
    table.rows = document["rows"]
    table.metadata = {**document["metadata"], "x": repr(x.coords)}
    return [table]
