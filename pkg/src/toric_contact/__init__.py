"""Exact combinatorics of toric contact manifolds in arbitrary codimension."""

from .errors import InputError, PropertyFailure, ToricError

__all__ = ["InputError", "PropertyFailure", "ToricError"]
