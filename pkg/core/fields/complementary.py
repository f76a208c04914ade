"""
Complementary vector field A_T x = rho(x, Tx)(-gamma_{x,Tx}) of a
nonexpansive map T.

The resolvent J_lam x is the fixed point of z -> gamma_{x,Tz}(lam/(1+lam)),
a lam/(1+lam)-contraction. Maps with a known closed form skip the iteration.
"""

import logging

import numpy as np

from config.settings import settings
from core.exceptions import NotNonexpansive, ProxDiverged
from core.fields.base import GraphPair, MonotoneField, NonexpansiveMap
from core.geometry.base import Point
from core.geometry.tangent import tangent_vector, zero_vector

logger = logging.getLogger(__name__)

NONEXPANSIVE_SLACK = 1e-9


def check_nonexpansive(mapping: NonexpansiveMap, n_pairs: int = 256, seed: int = 0) -> float:
    """Largest sampled rho(Tx, Ty) - rho(x, y); <= 0 for nonexpansive maps"""
    space = mapping.space
    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(n_pairs):
        x = space.sample_point(rng)
        y = space.sample_point(rng)
        worst = max(worst, space.distance(mapping(x), mapping(y)) - space.distance(x, y))
    return float(worst)


def banach_resolvent(
    mapping: NonexpansiveMap,
    lam: float,
    x: Point,
    tol: float,
    max_iter: int,
) -> Point:
    space = mapping.space
    weight = lam / (1.0 + lam)
    z = x
    for iteration in range(max_iter):
        updated = space.geodesic_point(x, mapping(z), weight)
        if space.distance(updated, z) < tol:
            return updated
        z = updated
    raise ProxDiverged(
        f"Complementary resolvent of {mapping.name} missed tolerance {tol} after {max_iter} iterations",
        metadata={'lambda': lam, 'map': mapping.name}
    )


def complementary_field(
    mapping: NonexpansiveMap,
    verify: bool = True,
    n_check: int = 256,
    seed: int = 0,
) -> MonotoneField:
    """
    Build A_T from a nonexpansive map.

    Args:
        verify: sample pairs first and refuse maps that expand distances.
            Turning it off builds the field of an arbitrary map, which is how
            the monotonicity tester is checked against a failing case.

    Raises:
        NotNonexpansive: if verify is set and a sampled pair expands
    """
    space = mapping.space
    if verify:
        excess = check_nonexpansive(mapping, n_check, seed)
        if excess > NONEXPANSIVE_SLACK:
            raise NotNonexpansive(
                f"Map {mapping.name} expands a sampled pair by {excess:.3e}",
                metadata={'map': mapping.name, 'excess': excess}
            )

    def resolvent(lam, x, tol=None, max_iter=None):
        if mapping.closed_resolvent is not None:
            return mapping.closed_resolvent(lam, x)
        return banach_resolvent(
            mapping,
            lam,
            x,
            tol if tol is not None else settings.resolvent_tol,
            max_iter if max_iter is not None else settings.resolvent_max_iter,
        )

    def sample(seed: int) -> GraphPair:
        rng = np.random.default_rng(seed)
        p = space.sample_point(rng)
        image = mapping(p)
        if space.same(p, image):
            return p, zero_vector(space, p)
        witness = space.extend_geodesic(p, image, -1.0)
        return p, tangent_vector(space, p, witness, space.distance(p, image))

    def min_norm(x: Point) -> float:
        return space.distance(x, mapping(x))

    return MonotoneField(
        name=f"complementary({mapping.name})",
        space=space,
        resolvent_oracle=resolvent,
        graph_sampler=sample,
        min_norm_oracle=min_norm,
        zero_set=mapping.fixed_points,
        full_domain=True,
    )
