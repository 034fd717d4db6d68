"""
Normalized monomial moments of the uniform measure on S^d.

The design equations compare a configuration's average of a monomial with
its mean over the sphere; this module supplies that mean exactly.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

from models import Monomial
from utils import DimensionMismatchError, UnsupportedParameterError

logger = logging.getLogger(__name__)


def double_factorial(m: int) -> int:
    """m!! with the convention (-1)!! = 0!! = 1."""
    return math.prod(range(m, 0, -2))


def sphere_moment(alpha: Union[Monomial, Sequence[int]], ambient_dim: int) -> Fraction:
    """
    Normalized integral of x^alpha over S^d, with ambient_dim = d+1.

    Zero when any exponent is odd; otherwise
        prod_i (alpha_i - 1)!! / prod_{j < |alpha|/2} (d + 1 + 2j).

    Args:
        alpha: Monomial or raw exponent tuple
        ambient_dim: d+1, the number of coordinates

    Returns:
        Exact rational moment
    """
    exponents = tuple(alpha.exponents) if isinstance(alpha, Monomial) else tuple(alpha)
    if ambient_dim < 1:
        raise UnsupportedParameterError(f"ambient dimension must be positive, got {ambient_dim}", "ambient_dim")
    if len(exponents) != ambient_dim:
        raise DimensionMismatchError(
            f"multi-index has {len(exponents)} entries, ambient dimension is {ambient_dim}",
            "alpha",
        )
    if any(e < 0 for e in exponents):
        raise UnsupportedParameterError(f"negative exponent in {exponents}", "alpha")
    return _moment(exponents)


@lru_cache(maxsize=None)
def _moment(exponents: Tuple[int, ...]) -> Fraction:
    if any(e % 2 for e in exponents):
        return Fraction(0)

    numerator = math.prod(double_factorial(e - 1) for e in exponents)
    half_degree = sum(exponents) // 2
    denominator = math.prod(len(exponents) + 2 * j for j in range(half_degree))
    return Fraction(numerator, denominator)


def enumerate_monomials(ambient_dim: int, max_degree: int) -> List[Monomial]:
    """
    All monomials of degree <= max_degree in graded lexicographic order.

    The count is C(max_degree + ambient_dim, ambient_dim).

    Args:
        ambient_dim: Number of coordinates
        max_degree: Largest total degree

    Returns:
        Monomials sorted by degree, then lexicographically by exponents
    """
    if ambient_dim < 1:
        raise UnsupportedParameterError(f"ambient dimension must be positive, got {ambient_dim}", "ambient_dim")
    if max_degree < 0:
        raise UnsupportedParameterError(f"max degree must be non-negative, got {max_degree}", "max_degree")
    return list(_enumerate(ambient_dim, max_degree))


@lru_cache(maxsize=None)
def _enumerate(ambient_dim: int, max_degree: int) -> Tuple[Monomial, ...]:
    monomials = [
        Monomial(exponents=exponents)
        for degree in range(max_degree + 1)
        for exponents in _compositions(degree, ambient_dim)
    ]
    logger.debug("enumerated %d monomials (dim %d, degree <= %d)", len(monomials), ambient_dim, max_degree)
    return tuple(monomials)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Exponent tuples summing to total, in increasing lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
