"""Computational checks for clique packings that avoid prescribed colorings."""

__version__ = "0.1.0"
