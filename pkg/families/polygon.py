"""
Regular polygons on S^1.
The regular (t+1)-gon is a t-design and not a (t+1)-design.
"""

import math

from models import PointConfiguration, ScalarMode
from .base import BaseFamily


class PolygonFamily(BaseFamily):
    """POLYGON(n): vertices at angles 2*pi*k/n, starting at (1, 0)."""

    cli_name = "polygon"
    parameters = {"n": 1}

    def build(self, n: int) -> PointConfiguration:
        points = [
            (math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
            for k in range(n)
        ]
        return PointConfiguration(dimension_d=1, mode=ScalarMode.FLOAT, points=points)
