"""Exact ramified Siegel series of level p, with an enumeration oracle.

The public surface: exact scalars (qfield), canonical rational functions in
X = p^(-s) (ratfun), p-adic invariants of half-integral matrices (localinv),
the cusp/eigenbasis change matrices (cuspmix), the series engine and its
identity checkers (series), and the brute-force oracle (oracle).
"""

from . import errors
from .localinv import (
    DiagonalForm,
    HalfIntMatrix,
    LocalData,
    diagonalize_over_Q,
    fundamental_discriminant,
    hasse_invariant,
    hilbert_symbol,
    jordan_diagonalize_Zp,
    legendre,
    local_data,
    zeta_p_of,
)
from .oracle import OracleSeries, compare, psi_tilde, stratum_data, truncated_series
from .qfield import Character, QElem, Rat, eps_p_half_power, field_disc, parse_qelem
from .ratfun import LaurentPoly, RatFunc
from .series import (
    SeriesValue,
    beta_factor,
    check_functional_equation,
    check_inductive_relation,
    check_scaling,
    h_factor,
    s0_closed,
    s_characteristic,
    s_cusp,
    series_for_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "DiagonalForm",
    "HalfIntMatrix",
    "LaurentPoly",
    "LocalData",
    "OracleSeries",
    "QElem",
    "Rat",
    "RatFunc",
    "SeriesValue",
    "beta_factor",
    "check_functional_equation",
    "check_inductive_relation",
    "check_scaling",
    "compare",
    "diagonalize_over_Q",
    "eps_p_half_power",
    "errors",
    "field_disc",
    "fundamental_discriminant",
    "h_factor",
    "hasse_invariant",
    "hilbert_symbol",
    "jordan_diagonalize_Zp",
    "legendre",
    "local_data",
    "parse_qelem",
    "psi_tilde",
    "s0_closed",
    "s_characteristic",
    "s_cusp",
    "series_for_matrix",
    "stratum_data",
    "truncated_series",
    "zeta_p_of",
]
