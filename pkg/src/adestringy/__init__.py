"""Contributions of A-D-E singularities to Batyrev's stringy E-function.

Two independent routes compute the same rational function in ``w = uv``:
summing over the strata of an explicit log resolution
(:func:`contribution_from_strata` on :func:`build_resolution`) and the
closed-form tables (:func:`contribution_closed`).
"""

from .exactalg import (
    ONE,
    W,
    ZERO,
    Polynomial,
    RationalFunction,
    geom_sum,
    monomial,
    parse_polynomial,
    rf_as_polynomial,
    rf_dual,
    rf_limit_at_one,
    rf_make,
)
from .quadrics import QuadricKind, quadric_hodge
from .catalog import (
    SingularitySpec,
    StratifiedResolution,
    build_resolution,
    discrepancy_of,
    validate_resolution,
)
from .stringy import (
    StringyReport,
    Verdict,
    assemble_global,
    contribution_from_strata,
    duality_check,
    hodge_numbers,
    stringy_euler_direct,
)
from .closedform import classify_polynomiality, contribution_closed

__version__ = "0.1.0"
