"""Closed-form solution families keyed by ODE shape.

Each family module transcribes its assignment formulas, integrability
conditions, and nonvanishing restrictions once, as grammar strings, and
exposes a solver that checks the conditions on concrete coefficients
before assembling zeta.  Shared report types live in .common.
"""

from .abel_a import abelA_solve
from .common import (
    CaseSolution,
    Condition,
    ConditionReport,
    ConditionResidual,
    GeneralSolution,
    NeedsSecondOrderSolution,
    check_condition,
    check_restrictions,
    reduce_modulo,
    sample_points,
)
from .riccati import riccati_case
from .uc1 import uc1_solve
from .uc2 import uc2_solve

__all__ = [
    "CaseSolution",
    "Condition",
    "ConditionReport",
    "ConditionResidual",
    "GeneralSolution",
    "NeedsSecondOrderSolution",
    "abelA_solve",
    "check_condition",
    "check_restrictions",
    "reduce_modulo",
    "riccati_case",
    "sample_points",
    "uc1_solve",
    "uc2_solve",
]
