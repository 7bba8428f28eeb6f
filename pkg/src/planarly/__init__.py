"""Exact computations with planar algebras, their perturbations and weights."""

from .numeric import Scalar, scalar, sqrt
from .pacore import Color, Element, PAInstance, index, is_spherical, modulus
from .signs import Sign

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "scalar",
    "sqrt",
    "Sign",
    "Color",
    "Element",
    "PAInstance",
    "modulus",
    "index",
    "is_spherical",
]
