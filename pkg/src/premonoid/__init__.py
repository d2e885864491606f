"""Preordered monoids: element classes, factorizations and the worked examples around them."""

from premonoid.checks import Check, Verdict
from premonoid.monoid import FiniteMonoid, Window, validate

__all__ = ["Check", "Verdict", "FiniteMonoid", "Window", "validate"]
__version__ = "0.1.0"
