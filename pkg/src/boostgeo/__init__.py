"""Geometry of boost-invariant spacelike surfaces in Minkowski 4-space."""

__version__ = "0.1.0"
