"""Shared fixtures: small designs whose rigidity status is known by hand."""

import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.design import generate  # noqa: E402
from models import PointConfiguration, ScalarMode  # noqa: E402


@pytest.fixture
def triangle() -> PointConfiguration:
    """Equilateral triangle on S^1, a 2-design."""
    return generate("polygon", n=3)


@pytest.fixture
def square() -> PointConfiguration:
    return generate("polygon", n=4)


@pytest.fixture
def pentagon() -> PointConfiguration:
    return generate("polygon", n=5)


@pytest.fixture
def cross_polytope() -> PointConfiguration:
    """+-e_i in R^3, exact."""
    return generate("cross-polytope", d=2)


@pytest.fixture
def antipodal_pairs() -> PointConfiguration:
    """{e_1, -e_1, u, -u} on S^1 with u at 60 degrees; a 1-design that flexes."""
    u = (0.5, math.sqrt(3) / 2)
    return PointConfiguration(
        dimension_d=1,
        mode=ScalarMode.FLOAT,
        points=[(1.0, 0.0), (-1.0, 0.0), u, (-u[0], -u[1])],
    )


@pytest.fixture
def antipodal_line() -> PointConfiguration:
    """{e_1, -e_1} on S^1, exact: n = d+1, so the pinned system has no unknowns."""
    return PointConfiguration(dimension_d=1, mode=ScalarMode.EXACT, points=[(1, 0), (-1, 0)])
