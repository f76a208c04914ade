"""
limits: both asymptotic regimes of J_lam x.

limits_zero walks the schedule downward toward the projection onto the
closure of the domain; limits_infinity walks it upward toward the
projection onto the zero set. With a witness, rows are flagged when the
distance grows along the walk and the last row is flagged above limit_tol.
Without one the table holds Cauchy increments and is not flagged.
"""

import logging
from typing import List

from app.artifacts import ArtifactTable
from app.commands.common import ExperimentContext, guarded
from core.resolvent.dto import LimitScan, ScanMode
from core.resolvent.engine import resolvent_limit_infinity, resolvent_limit_zero

logger = logging.getLogger(__name__)

COLUMNS = ["lambda", "dist_to_limit", "flag"]
TREND_SLACK = 1e-9


def _table(name: str, scan: LimitScan, limit_tol: float) -> ArtifactTable:
    table = ArtifactTable(name=name, columns=COLUMNS, metadata={"mode": scan.mode.value})
    if scan.target is not None:
        table.metadata["target"] = repr(scan.target.coords)
    previous = None
    for index, row in enumerate(scan.rows):
        flag = 0
        if scan.mode == ScanMode.REFERENCE:
            if previous is not None and row.distance > previous + TREND_SLACK:
                flag = 1
            if index == len(scan.rows) - 1 and not row.distance <= limit_tol:
                flag = 1
        table.rows.append({"lambda": row.lam, "dist_to_limit": row.distance, "flag": flag})
        previous = row.distance
    if scan.mode == ScanMode.CAUCHY:
        logger.warning(f"{name}: no witness for the limit, reporting Cauchy increments")
    return table


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    field = ctx.require_field()
    x = ctx.x
    increasing = list(ctx.run.lambdas)
    decreasing = list(reversed(increasing))
    limit_tol = ctx.run.limit_tol

    tables = []
    for name, scan_fn, schedule in (
        ("limits_zero", lambda: resolvent_limit_zero(field, x, decreasing), decreasing),
        ("limits_infinity", lambda: resolvent_limit_infinity(field, x, increasing, strict=False), increasing),
    ):
        scan = guarded(scan_fn, name)
        if scan is None:
            failed = ArtifactTable(name=name, columns=COLUMNS)
            failed.rows = [failed.failed_row(**{"lambda": lam}) for lam in schedule]
            tables.append(failed)
            continue
        table = _table(name, scan, limit_tol)
        table.metadata["x"] = repr(x.coords)
        tables.append(table)
        logger.info(f"{name}: final distance {scan.final_distance:.3e} ({scan.mode.value})")
    return tables
