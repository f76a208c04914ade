"""
trajectory: S(t)x over the configured times with Fejer flags, plus the
tail-window Delta-convergence report in the JSON metadata.
"""

import logging
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import ExperimentContext, guarded
from app.core.exceptions import ConfigError
from core.semigroup.diagnostics import delta_convergence_check, fejer_flags
from core.semigroup.generation import trajectory

logger = logging.getLogger(__name__)

COLUMNS = ["t", "k_used", "dist_to_zero_set", "flag"]


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    if not field.has_zero_set:
        raise ConfigError(f"trajectory needs a field with a zero-set witness; {field.name} has none")
    run_section = ctx.run
    x = ctx.x

    table = ArtifactTable(name="trajectory", columns=COLUMNS)
    result = guarded(
        lambda: trajectory(field, x, run_section.times, run_section.target_tol, run_section.norm_bound),
        "trajectory",
    )
    if result is None:
        table.rows = [table.failed_row(t=t) for t in run_section.times]
        return [table]

    fejer = [False] + fejer_flags(result.distances, ctx.tolerance(1e-7))
    rows = zip(result.times, result.k_used, result.distances, fejer, result.missed_target)
    for t, k, distance, fejer_flag, missed in rows:
        if missed:
            logger.warning(f"t={t}: step cap k={k} misses target_tol {run_section.target_tol:.3e}")
        table.rows.append({"t": t, "k_used": k, "dist_to_zero_set": distance, "flag": int(fejer_flag or missed)})

    table.metadata = {
        "x": repr(x.coords),
        "zero": repr(result.reference.coords),
        "target_tol": run_section.target_tol,
        "bounds": result.bounds,
    }
    report = guarded(
        lambda: delta_convergence_check(
            ctx.space,
            result.points,
            result.reference,
            field=field,
            tail_fraction=run_section.tail_fraction,
        ),
        "Delta-convergence check",
    )
    if report is not None:
        table.metadata["delta"] = report.to_dict()
    return [table]
