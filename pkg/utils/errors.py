"""
Exception hierarchy for the Rigid Design Toolkit.
Every error names the input field it complains about so the CLI can
print a one-line diagnostic.
"""

from typing import Optional


class RigidDesignError(ValueError):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field

    def diagnostic(self) -> str:
        """One-line diagnostic: '<field>: <message>' when a field is known."""
        if self.field:
            return f"{self.field}: {self}"
        return str(self)


class DimensionMismatchError(RigidDesignError):
    """A vector or multi-index has the wrong length for the ambient space."""


class ConfigurationFormatError(RigidDesignError):
    """A configuration document or exported system is malformed."""


class UnsupportedParameterError(RigidDesignError):
    """A generator or operation received a parameter outside its domain."""


class LayoutMismatchError(RigidDesignError):
    """An assignment does not match a system's variable layout or mode."""


class PreconditionError(RigidDesignError):
    """An operation was called outside its documented preconditions."""


class NotADesignError(RigidDesignError):
    """A configuration fails the design property required by an operation."""
