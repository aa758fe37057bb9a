"""Exact verification of para-Kahler structures on four-dimensional Lie algebras."""

__version__ = "0.1.0"
