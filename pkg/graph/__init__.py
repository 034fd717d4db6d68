"""LangGraph workflow components."""

from .state import CertificationState
from .workflow import create_workflow

__all__ = ["CertificationState", "create_workflow"]
