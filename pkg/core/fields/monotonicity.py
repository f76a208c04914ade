"""
Sampled checks of monotonicity, subgradient inequalities and the Fermat rule.
"""

import logging
import math
from typing import List

from config.settings import settings
from core.exceptions import BaseMismatch, DomainError
from core.fields.base import ConvexFunctional, GraphPair, MonotoneField
from core.geometry.tangent import quasi_inner, tangent_inner, tangent_vector

logger = logging.getLogger(__name__)


def _check_pair(field: MonotoneField, pair: GraphPair) -> None:
    point, vector = pair
    field.space._check(point, vector.base)
    if not field.space.same(point, vector.base):
        raise BaseMismatch("Graph pair vector is not based at its point")


def monotonicity_residual(field: MonotoneField, first: GraphPair, second: GraphPair) -> float:
    """
    g_p(u, gamma_{p,q}) + g_q(v, gamma_{q,p}) with unit geodesic directions;
    <= 0 for monotone fields and defined as 0 when p = q.
    """
    _check_pair(field, first)
    _check_pair(field, second)
    space = field.space
    (p, u), (q, v) = first, second
    if space.same(p, q):
        return 0.0
    toward_q = tangent_vector(space, p, q)
    toward_p = tangent_vector(space, q, p)
    return tangent_inner(u, toward_q) + tangent_inner(v, toward_p)


def _quasi_term(field: MonotoneField, pair: GraphPair, other) -> float:
    point, vector = pair
    if vector.zero:
        return 0.0
    # vector = t * (p -> witness) with t = norm / rho(p, witness)
    t = vector.norm / field.space.distance(point, vector.witness)
    return quasi_inner(field.space, point, vector.witness, other, t, 1.0)


def quasi_monotonicity_residual(field: MonotoneField, first: GraphPair, second: GraphPair) -> float:
    """
    <t p->x, p->q> + <s q->y, q->p> in quasilinearized form; the geodesic
    directions are not normalized, so the quadratic field in R^n gives
    -rho^2(p, q).
    """
    _check_pair(field, first)
    _check_pair(field, second)
    (p, _), (q, _) = first, second
    if field.space.same(p, q):
        return 0.0
    return _quasi_term(field, first, q) + _quasi_term(field, second, p)


def sample_monotonicity(field: MonotoneField, n_pairs: int, seed: int) -> List[float]:
    """Residuals over graph pairs drawn with consecutive seeds"""
    if field.graph_sampler is None:
        raise DomainError(f"Field {field.name} has no graph sampler", metadata={'field': field.name})
    residuals = []
    for index in range(n_pairs):
        first = field.graph_sampler(seed + 2 * index)
        second = field.graph_sampler(seed + 2 * index + 1)
        residuals.append(monotonicity_residual(field, first, second))
    return residuals


def field_min_norm(field: MonotoneField, x) -> float:
    """
    |Ax|, from the closed form when present. Otherwise the Yosida norm at a
    small lambda, a lower bound for |Ax|; huge estimates are reported as inf.
    """
    if field.min_norm_oracle is not None:
        return float(field.min_norm_oracle(x))
    lam = settings.min_norm_lambda
    estimate = field.space.distance(x, field.resolvent(lam, x)) / lam
    if estimate > settings.infinite_norm_threshold:
        logger.debug(f"Minimal norm estimate {estimate:.3e} treated as infinite")
        return math.inf
    return estimate


def subgradient_residual(functional: ConvexFunctional, pair: GraphPair, x) -> float:
    """F(x) - F(p) - rho(p, x) g_p(v, gamma_{p,x}); >= 0 for subgradients"""
    space = functional.space
    p, v = pair
    if space.same(p, x):
        return functional(x) - functional(p)
    direction = tangent_vector(space, p, x)
    return functional(x) - functional(p) - space.distance(p, x) * tangent_inner(v, direction)


def fermat_residual(functional: ConvexFunctional, lam: float, x, p_bar, y) -> float:
    """Prox objective at y minus its value at p_bar; >= 0 when p_bar is the prox"""
    space = functional.space

    def objective(point) -> float:
        d = space.distance(point, x)
        return functional(point) + d * d / (2.0 * lam)

    return objective(y) - objective(p_bar)


def convexity_residual(functional: ConvexFunctional, x, y, t: float) -> float:
    """(1-t)F(x) + tF(y) - F(gamma(t)); >= 0 along geodesics"""
    middle = functional.space.geodesic_point(x, y, t)
    return (1.0 - t) * functional(x) + t * functional(y) - functional(middle)
