"""Subdifferential fields of convex functionals."""

import logging

import numpy as np

from core.fields.base import ConvexFunctional, GraphPair, MonotoneField
from core.fields.prox import prox
from core.geometry.tangent import tangent_vector

logger = logging.getLogger(__name__)

# graph samples draw lambda log-uniformly from this decade range
SAMPLE_LOG_LAMBDA = (-1.0, 1.0)


def subdifferential_field(functional: ConvexFunctional) -> MonotoneField:
    """
    The field of subgradients of F; its resolvent is prox_lam F.

    The graph sampler only reaches subgradients of the form
    lam^-1 rho(p, x) gamma_{p,x} at p = prox_lam F(x).
    """
    space = functional.space

    def resolvent(lam, x, tol=None, max_iter=None):
        return prox(functional, lam, x, tol=tol, max_iter=max_iter)

    def sample(seed: int) -> GraphPair:
        rng = np.random.default_rng(seed)
        x = space.sample_point(rng)
        lam = float(10.0 ** rng.uniform(*SAMPLE_LOG_LAMBDA))
        p = resolvent(lam, x)
        return p, tangent_vector(space, p, x, space.distance(p, x) / lam)

    return MonotoneField(
        name=f"subdifferential({functional.name})",
        space=space,
        resolvent_oracle=resolvent,
        graph_sampler=sample,
        min_norm_oracle=functional.min_norm_oracle,
        zero_set=functional.minimizers,
        domain_set=functional.domain_set,
        full_domain=functional.domain_set is None,
    )
