"""Computations around cubic threefolds with an Eckardt point."""

__version__ = "0.1.0"
