"""Exact computation of generalized lattice kissing numbers."""

__version__ = "0.1.0"
