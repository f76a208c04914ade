"""
One-dimensional minimization shared by projections, prox solvers and
asymptotic centers.
"""

import math
from typing import Callable, Tuple

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section_minimize(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12
) -> Tuple[float, float]:
    """
    Golden-section search for a unimodal f on [a, b].

    Returns (t, f(t)) for the best point seen, endpoints included, so a
    minimum sitting on the boundary is reported exactly.
    """
    a, b = min(a, b), max(a, b)
    fa, fb = f(a), f(b)
    best_t, best_f = (a, fa) if fa <= fb else (b, fb)

    h = b - a
    if h <= tol:
        return best_t, best_f

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    for t, value in ((c, yc), (d, yd)):
        if value < best_f:
            best_t, best_f = t, value
    return best_t, best_f
