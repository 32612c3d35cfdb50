"""Finite simplicial sets over nerves of small categories."""

__version__ = "0.1.0"
