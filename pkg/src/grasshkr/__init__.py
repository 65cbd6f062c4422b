"""Hochschild-Kostant-Rosenberg decompositions of generalised Grassmannians."""

__version__ = "0.1.0"
