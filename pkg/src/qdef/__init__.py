"""Existential and universal definitions of rings of S-integers in Q, with verification."""

__version__ = "0.1.0"
