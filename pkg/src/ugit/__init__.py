"""Exact computations for graded unipotent group actions."""

__version__ = "0.1.0"
