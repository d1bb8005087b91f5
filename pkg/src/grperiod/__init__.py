"""Exact quantum periods of blow-ups of projective space.

Blow-ups of P^N in split complete intersections are modelled as zero loci
in Grassmann bundles; their (regularised) quantum periods are assembled
from closed-form hypergeometric series with exact rational arithmetic.
"""

from .assembler import PeriodSeries, period_series, unit_coefficient
from .targets import (
    BlowUpSpec,
    CurveClass,
    DivisorData,
    FlagTarget,
    TwistSpec,
    anticanonical,
    normalize_blowup,
)

__all__ = [
    "BlowUpSpec",
    "CurveClass",
    "DivisorData",
    "FlagTarget",
    "PeriodSeries",
    "TwistSpec",
    "anticanonical",
    "normalize_blowup",
    "period_series",
    "unit_coefficient",
]

__version__ = "0.1.0"
