"""Exact Möbius cohomology of poset modules and Rota-type identity checks."""

__version__ = "0.1.0"
