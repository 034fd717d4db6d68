"""
Regular polytopes in any dimension: simplex, cross-polytope, hypercube.
"""

import itertools
import math

import numpy as np

from models import PointConfiguration, ScalarMode
from .base import BaseFamily


class SimplexFamily(BaseFamily):
    """
    SIMPLEX(d): d+2 vertices of the regular simplex inscribed in S^d (a 2-design).

    Vertex i has coordinates h_k[i] in the Helmert basis of the
    hyperplane sum(x) = 0 of R^{d+2}, rescaled to unit length.
    """

    cli_name = "simplex"
    parameters = {"d": 0}

    def build(self, d: int) -> PointConfiguration:
        size = d + 2
        helmert = np.zeros((d + 1, size))
        for k in range(1, d + 2):
            helmert[k - 1, :k] = 1.0
            helmert[k - 1, k] = -k
            helmert[k - 1] /= math.sqrt(k * (k + 1))

        vertices = helmert.T / math.sqrt(1.0 - 1.0 / size)
        return PointConfiguration(
            dimension_d=d,
            mode=ScalarMode.FLOAT,
            points=[tuple(float(x) for x in row) for row in vertices],
        )


class CrossPolytopeFamily(BaseFamily):
    """CROSS_POLYTOPE(d): the 2(d+1) exact points e_1, -e_1, e_2, -e_2, ... (a 3-design)."""

    cli_name = "cross-polytope"
    parameters = {"d": 0}

    def build(self, d: int) -> PointConfiguration:
        points = []
        for i in range(d + 1):
            for sign in (1, -1):
                points.append(tuple(sign if j == i else 0 for j in range(d + 1)))
        return PointConfiguration(dimension_d=d, mode=ScalarMode.EXACT, points=points)


class HypercubeFamily(BaseFamily):
    """HYPERCUBE(d): the 2^{d+1} points (+-1, ..., +-1)/sqrt(d+1) (a 3-design)."""

    cli_name = "hypercube"
    parameters = {"d": 0}

    def build(self, d: int) -> PointConfiguration:
        scale = 1.0 / math.sqrt(d + 1)
        points = [
            tuple(sign * scale for sign in signs)
            for signs in itertools.product((1, -1), repeat=d + 1)
        ]
        return PointConfiguration(dimension_d=d, mode=ScalarMode.FLOAT, points=points)
