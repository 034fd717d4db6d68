"""Computational core: moments, designs, polynomial systems, rigidity and bounds."""
