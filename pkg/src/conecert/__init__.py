"""Certification of area-minimizing cones over products of embedded Grassmannians."""

__version__ = "0.1.0"
