"""Finite semigroups, assemblies and bands of groups."""

__version__ = "0.1.0"
