"""Finite-field DFT workbench for linear network coding over acyclic delay networks."""

__version__ = "0.1.0"
