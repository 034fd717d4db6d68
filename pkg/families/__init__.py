"""Classical configuration families, looked up by command-line name."""

from typing import Dict, Type

from utils import UnsupportedParameterError
from .base import BaseFamily
from .icosahedron import IcosahedronFamily
from .polygon import PolygonFamily
from .polytopes import CrossPolytopeFamily, HypercubeFamily, SimplexFamily

FAMILIES: Dict[str, Type[BaseFamily]] = {
    family.cli_name: family
    for family in (PolygonFamily, SimplexFamily, CrossPolytopeFamily, HypercubeFamily, IcosahedronFamily)
}


def get_family(name: str) -> BaseFamily:
    """Instantiate the family registered under a CLI name ('cross_polytope' also accepted)."""
    key = name.strip().lower().replace("_", "-")
    if key not in FAMILIES:
        raise UnsupportedParameterError(
            f"unknown family '{name}'; choose from {', '.join(sorted(FAMILIES))}", "family"
        )
    return FAMILIES[key]()


__all__ = [
    "BaseFamily",
    "PolygonFamily",
    "SimplexFamily",
    "CrossPolytopeFamily",
    "HypercubeFamily",
    "IcosahedronFamily",
    "FAMILIES",
    "get_family",
]
