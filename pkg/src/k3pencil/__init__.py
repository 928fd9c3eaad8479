"""k3pencil: exact-arithmetic verification toolkit for a pencil of K3
surfaces, its Picard/transcendental lattices, and the associated
Apery/Fermi/Domb operator identities."""

__version__ = "0.1.0"

from .field import QQ, QS, QSA, Field, FieldElement, QPoly, Rat, RatFunc
from .mpoly import MPoly, parse_poly

__all__ = [
    "QQ",
    "QS",
    "QSA",
    "Field",
    "FieldElement",
    "QPoly",
    "Rat",
    "RatFunc",
    "MPoly",
    "parse_poly",
]
