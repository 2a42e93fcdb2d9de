"""Zigzags, z-monodromy and realization of signed permutations on surfaces."""

__version__ = "0.1.0"
