"""Workflow stages for rigidity certification."""
