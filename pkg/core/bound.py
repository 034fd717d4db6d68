"""
Root-count bound for isolated real roots and the size inequality it
forces on rigid designs, in exact integer arithmetic.

A rigid n-point t-design on S^d gives an isolated root of its pinned
system, and permuting the n-d-1 unknown points gives (n-d-1)! of them.
The system has k = (d+1)(n-d-1) unknowns and degree t' = max(t, 2), so
    t' (2t' - 1)^(k-1) >= (n-d-1)!
must hold.
"""

import logging
import math
from typing import Dict, Iterable, Iterator

from models import BoundReport
from utils import PreconditionError

logger = logging.getLogger(__name__)


def milnor_bound(degree: int, num_vars: int) -> int:
    """
    Maximum number of isolated common real roots of polynomials of
    degree <= degree in num_vars variables: degree * (2*degree - 1)^(num_vars - 1).
    """
    if degree < 1:
        raise PreconditionError(f"degree must be at least 1, got {degree}", "degree")
    if num_vars < 1:
        raise PreconditionError(f"num_vars must be at least 1, got {num_vars}", "num_vars")
    return degree * (2 * degree - 1) ** (num_vars - 1)


def theorem_check(t: int, d: int, n: int) -> BoundReport:
    """
    Evaluate both sides of the size inequality.

    For n <= d+1 there are no unknowns; the report uses 0! = 1 on the right,
    t' on the left, and holds trivially.

    Args:
        t: Design strength (>= 1)
        d: Sphere dimension (>= 1)
        n: Number of points (>= 1)

    Returns:
        BoundReport with exact lhs and rhs
    """
    _check_strength(t, d)
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}", "n")

    t_prime = max(t, 2)
    free_points = n - d - 1
    k = (d + 1) * free_points

    if free_points < 1:
        lhs, rhs = t_prime, 1
    else:
        lhs = milnor_bound(t_prime, k)
        rhs = math.factorial(free_points)

    return BoundReport(t=t, d=d, n=n, t_prime=t_prime, k=k, lhs=lhs, rhs=rhs, holds=lhs >= rhs)


def max_feasible_n(t: int, d: int) -> int:
    """
    Largest n >= d+2 for which the inequality holds.

    Scans n upward with incremental products. Passing from n to n+1 the left
    side gains the factor (2t'-1)^(d+1) and the right side the factor n-d;
    once the inequality fails at some n0 with n0-d-1 > (2t'-1)^(d+1) it
    fails for every larger n, and the scan stops.
    """
    _check_strength(t, d)
    t_prime = max(t, 2)
    growth = (2 * t_prime - 1) ** (d + 1)

    n = d + 2
    lhs = milnor_bound(t_prime, d + 1)
    rhs = 1
    best = None
    while True:
        free_points = n - d - 1
        if lhs >= rhs:
            best = n
        elif free_points > growth:
            break
        n += 1
        lhs *= growth
        rhs *= n - d - 1

    logger.info("max feasible n for t=%d, d=%d: %d (scan stopped at %d)", t, d, best, n)
    return best


def bound_table(t_values: Iterable[int], d_values: Iterable[int]) -> Iterator[Dict[str, int]]:
    """
    One row per (t, d): max_feasible_n and the decimal digit counts of both
    sides of the inequality at that n.
    """
    d_values = list(d_values)
    for t in t_values:
        for d in d_values:
            n = max_feasible_n(t, d)
            report = theorem_check(t, d, n)
            yield {
                "t": t,
                "d": d,
                "max_feasible_n": n,
                "lhs_digits": len(str(report.lhs)),
                "rhs_digits": len(str(report.rhs)),
            }


def _check_strength(t: int, d: int) -> None:
    if t < 1:
        raise PreconditionError(f"t must be at least 1, got {t}", "t")
    if d < 1:
        raise PreconditionError(f"d must be at least 1, got {d}", "d")
