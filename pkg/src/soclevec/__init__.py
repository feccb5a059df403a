"""Socle-vectors and h-vectors of standard graded artinian algebras."""

from .macaulay import BinomialExpansion, binom, expand, macaulay_bound, min_prev, shift
from .vectors import (
    HVector,
    InvalidVector,
    SocleVector,
    max_socle_for_h,
    min_codimension,
    min_h_for_socle,
    validate_h,
)

__all__ = [
    "BinomialExpansion",
    "HVector",
    "InvalidVector",
    "SocleVector",
    "binom",
    "expand",
    "macaulay_bound",
    "max_socle_for_h",
    "min_codimension",
    "min_h_for_socle",
    "min_prev",
    "shift",
    "validate_h",
]
