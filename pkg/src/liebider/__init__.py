"""Exact window-scale verification of delta-derivation and
delta-biderivation classifications for the Witt algebra, the Virasoro
algebra, and the W-algebras W(a,b) and their central extensions."""

from .algebra import AlgebraSpec, Window, bracket, jacobi_check
from .basis import BasisVector, Element
from .rationals import Rat, rat

__all__ = [
    "AlgebraSpec",
    "Window",
    "bracket",
    "jacobi_check",
    "BasisVector",
    "Element",
    "Rat",
    "rat",
]

__version__ = "0.1.0"
