"""
Base class for configuration families.
Each family generates one classical point configuration on a sphere.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

from models import PointConfiguration
from utils import UnsupportedParameterError


class BaseFamily(ABC):
    """
    Abstract base class for all configuration generators.

    Each family is responsible for:
    1. Validating its size parameters
    2. Producing deterministic coordinates on the unit sphere
    3. Declaring the scalar mode of its output
    """

    # Name used on the command line (e.g. 'cross-polytope')
    cli_name: str = ""

    # Parameters the family accepts, mapped to their minimum value
    parameters: Dict[str, int] = {}

    def __init__(self):
        """Initialize the family with its name."""
        self.name = self.__class__.__name__

    @abstractmethod
    def build(self, **params: int) -> PointConfiguration:
        """
        Build the configuration.

        This method must be implemented by all subclasses and may assume
        validated parameters.
        """
        pass

    def validate_params(self, **params: Any) -> bool:
        """
        Validate size parameters before generating.

        Returns:
            True if valid, raises UnsupportedParameterError if not
        """
        unknown = set(params) - set(self.parameters)
        if unknown:
            name = sorted(unknown)[0]
            raise UnsupportedParameterError(f"{self.cli_name} does not take '{name}'", name)

        for name, minimum in self.parameters.items():
            value = params.get(name)
            if value is None:
                raise UnsupportedParameterError(f"{self.cli_name} requires '{name}'", name)
            if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
                raise UnsupportedParameterError(
                    f"{self.cli_name}({name}={value!r}) is unsupported; need an integer >= {minimum}",
                    name,
                )
        return True

    def generate(self, **params: int) -> PointConfiguration:
        """Validate, then build."""
        self.validate_params(**params)
        return self.build(**params)
