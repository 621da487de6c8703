"""Desk-scale computations with finite monoids, their actions and topologies."""

__version__ = "0.1.0"
