"""Quadratic points, elliptic quotients and height computations for a genus-4 family."""

from .analysis import AnalysisReport, analyze
from .elliptic import ECPoint, EllipticCurve, HeightEstimate, canonical_height, is_torsion
from .errors import QPLabError
from .family import ComponentLabel, Genus4Params, elliptic_quotients, make_curve, xi_projection

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "ComponentLabel",
    "ECPoint",
    "EllipticCurve",
    "Genus4Params",
    "HeightEstimate",
    "QPLabError",
    "analyze",
    "canonical_height",
    "elliptic_quotients",
    "is_torsion",
    "make_curve",
    "xi_projection",
]
