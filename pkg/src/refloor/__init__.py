"""Refined curve counts of rational surfaces from floor diagrams.

The package is organised bottom-up:

* :mod:`refloor.qlaurent`   Laurent polynomials in q^(1/2) and q-integers
* :mod:`refloor.diagram`    floor diagrams, validation, canonical keys
* :mod:`refloor.enumeration` diagram generation, markings and tallies
* :mod:`refloor.bps`        relative / absolute BPS polynomials and conversions
* :mod:`refloor.k3series`   truncated series and the K3 generating functions
"""
from .bps import (
    BpsResult,
    abv_absolute,
    abv_complex_count,
    gw_expansion,
    gw_expansion_absolute,
    gw_expansion_relative,
    pad_class,
    pt_series,
    relative_bps,
    relative_result,
    welschinger_relative,
)
from .diagram import (
    DIV2,
    DIV4,
    CurveClass,
    Edge,
    FloorDiagram,
    Leg,
    StructureError,
    Tangency,
    canonical_key,
    divergence,
    is_valid,
    validate,
)
from .enumeration import (
    FORMAT_VERSION,
    DiagramTally,
    count_markings,
    enumerate_diagrams,
    real_multiplicity,
    refined_multiplicity,
    tally,
)
from .k3series import TruncatedSeries, check_k3_welschinger, kkv_coefficients, real_k3_coefficients
from .qlaurent import (
    ONE,
    ZERO,
    HalfIntegerExponentError,
    QLaurent,
    evaluate_at_sign,
    is_palindromic,
    q_int,
    q_real_int,
)

__version__ = "0.1.0"

__all__ = [
    "BpsResult",
    "CurveClass",
    "DIV2",
    "DIV4",
    "DiagramTally",
    "Edge",
    "FORMAT_VERSION",
    "FloorDiagram",
    "HalfIntegerExponentError",
    "Leg",
    "ONE",
    "QLaurent",
    "StructureError",
    "Tangency",
    "TruncatedSeries",
    "ZERO",
    "abv_absolute",
    "abv_complex_count",
    "canonical_key",
    "check_k3_welschinger",
    "count_markings",
    "divergence",
    "enumerate_diagrams",
    "evaluate_at_sign",
    "gw_expansion",
    "gw_expansion_absolute",
    "gw_expansion_relative",
    "is_palindromic",
    "is_valid",
    "kkv_coefficients",
    "pad_class",
    "pt_series",
    "q_int",
    "q_real_int",
    "real_k3_coefficients",
    "real_multiplicity",
    "refined_multiplicity",
    "relative_bps",
    "relative_result",
    "tally",
    "validate",
    "welschinger_relative",
]
