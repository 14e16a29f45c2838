"""Elliptic-curve point counts through exponential sums and rational-function representations."""

from .errors import EcrepError
from .numerics import CurveParams, PrecisionContext, make_context

__all__ = ["CurveParams", "EcrepError", "PrecisionContext", "make_context"]
__version__ = "0.1.0"
