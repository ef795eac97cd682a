"""Regions of variability of f'(z0) for two classes of univalent functions."""

__version__ = "0.1.0"
