"""
axioms: sampled CAT(0) inequality residuals of the configured space.

Every check is oriented so that a correct space gives residuals >= 0; the
row reports the smallest residual seen and is flagged below -tolerance.
"""

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.artifacts import ArtifactTable
from app.commands.common import FIRST_CHECK_STREAM, ExperimentContext, guarded, map_rows, safe_min
from core.geometry.angles import alexandrov_angle, comparison_angle
from core.geometry.base import GeodesicSpace
from core.geometry.residuals import cn_residual, quad_residual
from core.resolvent.engine import negative_geodesic_residual

logger = logging.getLogger(__name__)

COLUMNS = ["check", "n_samples", "min_residual", "flag"]
ANGLE_TOLERANCE = 1e-6

Sample = Callable[[GeodesicSpace, np.random.Generator, float], float]


def _cn(space: GeodesicSpace, rng: np.random.Generator, scale: float) -> float:
    x, y, v = (space.sample_point(rng, scale) for _ in range(3))
    return cn_residual(space, space.geodesic(x, y), v, float(rng.uniform()))


def _quadrilateral(space: GeodesicSpace, rng: np.random.Generator, scale: float) -> float:
    x, y, u, v = (space.sample_point(rng, scale) for _ in range(4))
    return quad_residual(space, x, y, u, v)


def _angle_comparison(space: GeodesicSpace, rng: np.random.Generator, scale: float) -> float:
    """comparison angle minus Alexandrov angle"""
    p, x, y = (space.sample_point(rng, scale) for _ in range(3))
    if space.same(p, x) or space.same(p, y):
        return 0.0
    return comparison_angle(space, p, x, y).radians - alexandrov_angle(space, p, x, y).radians


def _negative_geodesic(space: GeodesicSpace, rng: np.random.Generator, scale: float) -> float:
    p, x, q = (space.sample_point(rng, scale) for _ in range(3))
    if space.same(p, x):
        return 0.0
    return negative_geodesic_residual(space, p, x, q)


def checks_for(space: GeodesicSpace, default_tol: float) -> List[Tuple[str, Sample, float]]:
    checks = [
        ("cn_inequality", _cn, default_tol),
        ("quadrilateral", _quadrilateral, default_tol),
        ("angle_comparison", _angle_comparison, ANGLE_TOLERANCE),
    ]
    if space.supports_extension:
        checks.append(("negative_geodesic", _negative_geodesic, default_tol))
    return checks


def run(ctx: ExperimentContext) -> List[ArtifactTable]:
    space = ctx.space
    n = ctx.run.samples
    table = ArtifactTable(name="axioms", columns=COLUMNS)
    checks = checks_for(space, ctx.tolerance(1e-9))

    def evaluate(indexed) -> Dict:
        index, (name, sample, tol) = indexed
        rng = ctx.rng(FIRST_CHECK_STREAM + index)

        def batch() -> float:
            return safe_min(sample(space, rng, ctx.run.scale) for _ in range(n))

        value = guarded(batch, f"check {name}")
        if value is None:
            return table.failed_row(check=name, n_samples=n)
        return {"check": name, "n_samples": n, "min_residual": value, "flag": int(not value >= -tol)}

    table.rows = map_rows(evaluate, list(enumerate(checks)), ctx.workers)
    table.metadata = {"samples": n, "scale": ctx.run.scale}
    return [table]
