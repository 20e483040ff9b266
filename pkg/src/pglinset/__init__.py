"""Scattered linear sets of pseudoregulus type in PG(1, q^t), by exhaustive computation."""

from .gf import FieldTower, HypothesisError, SizingError, build_tower, theta, theta_inverse

__all__ = ["FieldTower", "HypothesisError", "SizingError", "build_tower", "theta", "theta_inverse"]
__version__ = "0.1.0"
