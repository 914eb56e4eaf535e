"""Möbius symmetrization of point configurations and Lipschitz constants."""

__version__ = "0.1.0"
