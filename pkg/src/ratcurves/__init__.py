"""Splitting types of normal and restricted tangent bundles of rational curves in P^n."""

from .construct import (
    curve_with_splitting,
    from_delta_sequence,
    monomial_curve,
    monomial_splitting,
    sacchiero,
)
from .curve import CurveMap, is_basepoint_free, is_nondegenerate, is_unramified
from .errors import InvariantError, ParseError, PreconditionError, RatCurvesError
from .field import FieldCtx
from .poly import HomPoly
from .strata import analyze_curve, dim_mor, expected_codim_dk, h1_end
from .syzygy import SplittingType, minimal_generators, normal_splitting, tangent_splitting

__all__ = [
    "CurveMap",
    "FieldCtx",
    "HomPoly",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "RatCurvesError",
    "SplittingType",
    "analyze_curve",
    "curve_with_splitting",
    "dim_mor",
    "expected_codim_dk",
    "from_delta_sequence",
    "h1_end",
    "is_basepoint_free",
    "is_nondegenerate",
    "is_unramified",
    "minimal_generators",
    "monomial_curve",
    "monomial_splitting",
    "normal_splitting",
    "sacchiero",
    "tangent_splitting",
]
