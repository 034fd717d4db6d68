"""Tests for the classical configuration families."""

from fractions import Fraction

import numpy as np
import pytest

from core.design import generate, verify_design
from families import FAMILIES, CrossPolytopeFamily, PolygonFamily, get_family
from models import ScalarMode
from utils import UnsupportedParameterError


def test_registry_names():
    assert sorted(FAMILIES) == ["cross-polytope", "hypercube", "icosahedron", "polygon", "simplex"]


def test_underscore_alias():
    assert isinstance(get_family("cross_polytope"), CrossPolytopeFamily)


def test_unknown_family():
    with pytest.raises(UnsupportedParameterError) as info:
        get_family("dodecahedron")
    assert info.value.field == "family"


def test_cross_polytope_points():
    X = generate("cross-polytope", d=2)
    assert X.mode is ScalarMode.EXACT
    assert X.n == 6
    assert X.points[:2] == ((Fraction(1), Fraction(0), Fraction(0)), (Fraction(-1), Fraction(0), Fraction(0)))


def test_square_vertices():
    X = generate("polygon", n=4)
    expected = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    np.testing.assert_allclose(X.as_array(), expected, atol=1e-15)


def test_icosahedron_is_five_design():
    X = generate("icosahedron")
    assert X.n == 12
    assert verify_design(X, 5, 1e-9).is_design
    assert not verify_design(X, 6, 1e-9).is_design


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_simplex_is_two_design(d):
    X = generate("simplex", d=d)
    assert X.n == d + 2
    assert verify_design(X, 2, 1e-9).is_design
    assert not verify_design(X, 3, 1e-9).is_design


@pytest.mark.parametrize("d", [1, 2, 3])
def test_hypercube_is_three_design(d):
    X = generate("hypercube", d=d)
    assert X.n == 2 ** (d + 1)
    assert verify_design(X, 3, 1e-9).is_design


def test_generation_is_deterministic():
    assert generate("icosahedron") == generate("icosahedron")


class TestValidateParams:

    def test_missing(self):
        with pytest.raises(UnsupportedParameterError) as info:
            PolygonFamily().generate()
        assert info.value.field == "n"

    def test_below_minimum(self):
        with pytest.raises(UnsupportedParameterError):
            generate("polygon", n=0)

    def test_unexpected(self):
        with pytest.raises(UnsupportedParameterError) as info:
            generate("icosahedron", d=2)
        assert info.value.field == "d"

    def test_not_an_integer(self):
        with pytest.raises(UnsupportedParameterError):
            generate("simplex", d=1.5)
