"""Canonical bases of higher-level Fock spaces via the bar-invariant basis built
from two commuting quantum affine actions and the Heisenberg algebra."""

__version__ = "0.1.0"
