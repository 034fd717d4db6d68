"""
Configuration settings for the Rigid Design Toolkit.
Holds the numeric thresholds shared by every module and sets up logging.
"""

import logging
import os
import sys
from typing import Tuple

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Settings:
    """Application settings. Only the log level is read from the environment."""

    # Logging
    LOG_LEVEL: str = os.getenv("RIGID_DESIGN_LOG_LEVEL", "WARNING")

    # Design verification
    DESIGN_TOLERANCE: float = 1e-9
    UNIT_NORM_TOLERANCE: float = 1e-12

    # Linear algebra
    RANK_TOLERANCE: float = 1e-8
    PIN_RANK_TOLERANCE: float = 1e-9
    NEAR_BOUNDARY_FACTOR: float = 10.0

    # Flex search
    FLEX_STEPS: Tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    FLEX_MAX_ITERATIONS: int = 50
    FLEX_RESIDUAL_TOLERANCE: float = 1e-12
    FLEX_MIN_DISPLACEMENT: float = 1e-6
    FLEX_DIVERGENCE_NORM: float = 1e6
    MAX_FLEX_DIRECTIONS: int = 16

    # Witness acceptance
    WITNESS_RESIDUAL_TOLERANCE: float = 1e-10
    WITNESS_ORBIT_SEPARATION: float = 1e-7

    # Randomized checks
    DEFAULT_SEED: int = 0

    # FLOAT -> EXACT conversion
    EXACT_DENOMINATOR_LIMIT: int = 10**6

    def validate(self) -> bool:
        """
        Validate that thresholds are usable.
        Returns True if valid, raises ValueError if not.
        """
        positive = {
            "DESIGN_TOLERANCE": self.DESIGN_TOLERANCE,
            "RANK_TOLERANCE": self.RANK_TOLERANCE,
            "PIN_RANK_TOLERANCE": self.PIN_RANK_TOLERANCE,
            "FLEX_RESIDUAL_TOLERANCE": self.FLEX_RESIDUAL_TOLERANCE,
            "FLEX_MIN_DISPLACEMENT": self.FLEX_MIN_DISPLACEMENT,
            "WITNESS_RESIDUAL_TOLERANCE": self.WITNESS_RESIDUAL_TOLERANCE,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")

        if not self.FLEX_STEPS or any(step <= 0 for step in self.FLEX_STEPS):
            raise ValueError("FLEX_STEPS must be a non-empty sequence of positive steps")

        if self.FLEX_MAX_ITERATIONS < 1:
            raise ValueError("FLEX_MAX_ITERATIONS must be at least 1")

        return True


def configure_logging(level: str = None) -> None:
    """
    Route log records to standard error.

    Standard output is reserved for JSON documents, so handlers never
    write there.

    Args:
        level: Level name (e.g. 'INFO'); defaults to settings.LOG_LEVEL
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


# Create global settings instance
settings = Settings()

# Validate settings on import
settings.validate()
