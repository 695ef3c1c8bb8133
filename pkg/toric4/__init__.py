"""Exact cohomology rings of 4-dimensional toric orbifolds."""

__version__ = "0.1.0"
