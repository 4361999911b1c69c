"""Exact computations for equivariant chromatic homotopy theory over abelian p-groups."""

__version__ = "0.1.0"
