"""Exact caloric and harmonic polynomial spaces on R^n and Z^n."""

from .linalg import BACKEND
from .ratpoly import BoxCylinder, Monomial, Poly

__all__ = ["BACKEND", "BoxCylinder", "Monomial", "Poly"]
__version__ = "0.1.0"
