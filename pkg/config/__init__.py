"""Configuration package for the Rigid Design Toolkit."""

from .settings import settings, configure_logging

__all__ = ["settings", "configure_logging"]
