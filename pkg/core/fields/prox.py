"""
Proximal mapping prox_lam F(x) = argmin_y F(y) + rho^2(y, x) / (2 lam).

Closed forms are used when the functional carries one. Otherwise:
- trees: minimize the one-dimensional restriction to every admissible edge
  by golden-section search and keep the best
- spaces with an exponential chart: projected geodesic descent with Armijo
  backtracking and central-difference gradients
- products: block-coordinate sweeps, each block solved recursively
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np

from config.settings import settings
from core.exceptions import DomainError, ProxDiverged, UnsupportedSet
from core.fields.base import ConvexFunctional
from core.geometry.base import ExponentialChart, GeodesicSpace, Point
from core.optimize import golden_section_minimize
from core.spaces.convex import ProductSet, Subtree, project_convex
from core.spaces.product import ProductSpace
from core.spaces.tree import TreeSpace

logger = logging.getLogger(__name__)

ARMIJO_C = 1e-4
MIN_STEP = 1e-16
MAX_SWEEPS = 200


def prox(
    functional: ConvexFunctional,
    lam: float,
    x: Point,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> Point:
    if not lam > 0:
        raise DomainError(f"Prox parameter must be positive, got {lam}")
    functional.space._check(x)
    if functional.prox_oracle is not None:
        return functional.prox_oracle(lam, x)
    return generic_prox(functional, lam, x, tol=tol, max_iter=max_iter)


def generic_prox(
    functional: ConvexFunctional,
    lam: float,
    x: Point,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> Point:
    space = functional.space
    tol = tol if tol is not None else settings.prox_step_tol
    max_iter = max_iter if max_iter is not None else settings.resolvent_max_iter
    smooth = functional.smooth_part or functional.evaluate

    def objective(y: Point) -> float:
        d = space.distance(y, x)
        return smooth(y) + d * d / (2.0 * lam)

    if isinstance(space, TreeSpace):
        return _tree_prox(space, objective, functional.domain_set)
    if isinstance(space, ExponentialChart):
        return _descent_prox(space, objective, functional.domain_set, x, tol, max_iter)
    if isinstance(space, ProductSpace):
        return _block_prox(space, smooth, functional.domain_set, lam, x, tol, max_iter)
    raise UnsupportedSet(f"No generic prox solver for {space.space_id}")


def _tree_prox(space: TreeSpace, objective: Callable[[Point], float], domain) -> Point:
    edges = space.edges
    if domain is not None:
        if not isinstance(domain, Subtree):
            raise UnsupportedSet("Tree prox supports subtree domains only")
        members = set(domain.vertices)
        if len(members) == 1:
            return space.vertex(domain.vertices[0])
        edges = [key for key in edges if key[0] in members and key[1] in members]

    best_point, best_value = None, math.inf
    for key in edges:
        offset, value = golden_section_minimize(
            lambda o, key=key: objective(space._canonical(key, o)),
            0.0,
            space.edge_length(key),
            tol=settings.golden_tol,
        )
        if value < best_value:
            best_point, best_value = space._canonical(key, offset), value
    return best_point


def _descent_prox(
    space: GeodesicSpace,
    objective: Callable[[Point], float],
    domain,
    x: Point,
    tol: float,
    max_iter: int,
) -> Point:
    def project(y: Point) -> Point:
        return y if domain is None else project_convex(space, domain, y)

    h = settings.finite_difference_step
    y = project(x)
    value = objective(y)
    step = 1.0

    for iteration in range(max_iter):
        frame_size = space.tangent_frame(y).shape[1]
        grad = np.zeros(frame_size)
        for i in range(frame_size):
            e = np.zeros(frame_size)
            e[i] = h
            grad[i] = (objective(space.exp_map(y, e)) - objective(space.exp_map(y, -e))) / (2.0 * h)
        if not np.all(np.isfinite(grad)):
            raise ProxDiverged("Non-finite gradient in prox descent", metadata={'iteration': iteration})
        if float(np.linalg.norm(grad)) == 0.0:
            return y

        step = min(1.0, 2.0 * step)
        while True:
            candidate = project(space.exp_map(y, -step * grad))
            moved = space.distance(y, candidate)
            candidate_value = objective(candidate)
            if candidate_value <= value - ARMIJO_C / step * moved * moved:
                break
            step *= 0.5
            if step < MIN_STEP:
                return y

        y, value = candidate, candidate_value
        if moved < tol:
            return y

    raise ProxDiverged(
        f"Prox descent did not reach step {tol} in {max_iter} iterations",
        metadata={'space': space.space_id, 'max_iter': max_iter}
    )


def _block_prox(
    space: ProductSpace,
    smooth: Callable[[Point], float],
    domain,
    lam: float,
    x: Point,
    tol: float,
    max_iter: int,
) -> Point:
    if domain is not None and not isinstance(domain, ProductSet):
        raise UnsupportedSet("Product prox supports product-set domains only")
    blocks = [
        (space.first, domain.first if domain is not None else None),
        (space.second, domain.second if domain is not None else None),
    ]
    current: List[Point] = list(x.coords)
    if domain is not None:
        current = [project_convex(factor, s, p) for (factor, s), p in zip(blocks, current)]

    for sweep in range(MAX_SWEEPS):
        previous = Point(space.space_id, tuple(current))
        for index, (factor, factor_domain) in enumerate(blocks):

            def restricted(z: Point, index=index) -> float:
                parts = list(current)
                parts[index] = z
                return smooth(Point(space.space_id, tuple(parts)))

            block = ConvexFunctional(
                name=f"block{index}",
                space=factor,
                evaluate=restricted,
                domain_set=factor_domain,
            )
            current[index] = generic_prox(block, lam, x.coords[index], tol=tol, max_iter=max_iter)

        updated = Point(space.space_id, tuple(current))
        if space.distance(previous, updated) < tol:
            logger.debug(f"Block prox converged after {sweep + 1} sweeps")
            return updated

    raise ProxDiverged(
        f"Block-coordinate prox did not settle in {MAX_SWEEPS} sweeps",
        metadata={'space': space.space_id}
    )
