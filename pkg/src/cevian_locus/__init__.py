"""Exact projective and triangle geometry for the locus of points whose map M is a half-turn."""

from .field import Scalar, parse_scalar
from .projective import PLine, PPoint

__all__ = ["Scalar", "parse_scalar", "PPoint", "PLine"]
__version__ = "0.1.0"
