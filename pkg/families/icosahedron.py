"""
The regular icosahedron on S^2, a 5-design with 12 points.
"""

import math

from models import PointConfiguration, ScalarMode
from .base import BaseFamily


class IcosahedronFamily(BaseFamily):
    """ICOSAHEDRON: cyclic permutations of (0, +-1, +-phi), normalized."""

    cli_name = "icosahedron"
    parameters = {}

    def build(self) -> PointConfiguration:
        phi = (1 + math.sqrt(5)) / 2
        scale = 1.0 / math.sqrt(1 + phi * phi)

        points = []
        for a in (1, -1):
            for b in (phi, -phi):
                base = (0.0, a * scale, b * scale)
                for shift in range(3):
                    points.append(base[-shift:] + base[:-shift] if shift else base)

        points.sort()
        return PointConfiguration(dimension_d=2, mode=ScalarMode.FLOAT, points=points)
