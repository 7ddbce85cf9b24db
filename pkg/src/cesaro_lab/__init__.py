"""Exact verification toolkit for generalized Cesàro matrices of integer order."""

__version__ = "0.1.0"

from .cesaro import CesaroMatrix, ParameterDomainError, entry, entry_general_beta, truncate
from .interrupters import (
    CornerInterrupter,
    DiagonalInterrupter,
    InterrupterPair,
    fixture_q_order3,
    p_entry,
    solve_corner,
    verify_consistency,
)
from .normality import (
    finite_section_defect,
    hyponormality_range,
    posinormal_coposinormal_range,
    q_minors_symbolic,
    verify_supraposinormal,
)
from .telescope import closed_form_entry, solve_telescope

__all__ = [
    "CesaroMatrix",
    "CornerInterrupter",
    "DiagonalInterrupter",
    "InterrupterPair",
    "ParameterDomainError",
    "__version__",
    "closed_form_entry",
    "entry",
    "entry_general_beta",
    "finite_section_defect",
    "fixture_q_order3",
    "hyponormality_range",
    "p_entry",
    "posinormal_coposinormal_range",
    "q_minors_symbolic",
    "solve_corner",
    "solve_telescope",
    "truncate",
    "verify_consistency",
    "verify_supraposinormal",
]
