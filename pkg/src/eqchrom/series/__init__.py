"""Exact sparse series arithmetic over p-local rationals."""

from .ideal import Nonzero, Unknown, Zero, is_unit, reduce_mod_In, relation_member, solve_local, verify_certificate
from .power import PowerSeries1, scalar_series, series_ring
from .ring import (
    CERTIFICATE_ONLY,
    INVERTED,
    POLY,
    SERIES,
    SET_TO_ZERO,
    Element,
    Generator,
    Ring,
    as_mpq,
    val_p,
)

__all__ = [
    "CERTIFICATE_ONLY", "INVERTED", "POLY", "SERIES", "SET_TO_ZERO",
    "Element", "Generator", "Ring", "PowerSeries1", "Zero", "Nonzero", "Unknown",
    "as_mpq", "val_p", "is_unit", "reduce_mod_In", "relation_member", "solve_local",
    "scalar_series", "series_ring", "verify_certificate",
]
