"""Cyclic, periodic and co-periodic cyclic homology over prime fields."""

__version__ = "0.1.0"
