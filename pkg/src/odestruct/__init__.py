"""Structure-based symbolic solver for first-order ODEs rational in y.

Posits a solution structure zeta(x, y) = c built from rational, log, and
arctan blocks of y-polynomials, derives the induced right-hand side
f = -zeta_x/zeta_y, matches it against a target ODE to get a
differential-algebraic system in the coefficient functions, and applies
the worked case families (Riccati, Abel-A, and two unclassified-quadratic
families) to produce integrability conditions and quadrature solutions.
"""

from .cases import (
    CaseSolution,
    Condition,
    ConditionReport,
    ConditionResidual,
    GeneralSolution,
    NeedsSecondOrderSolution,
    abelA_solve,
    riccati_case,
    uc1_solve,
    uc2_solve,
)
from .errors import (
    BranchLimitExceeded,
    DegenerateStructure,
    DegreeMismatch,
    DivisionInexact,
    ExhaustedRetries,
    MissingBinding,
    NonFiniteResult,
    NotPolynomialInY,
    OdestructError,
    ParseError,
    ParticularSolutionInvalid,
    PoleEncountered,
    RestrictionViolated,
    SearchExhausted,
    StepFailure,
    SuppliedA2Invalid,
    ZeroDenominator,
)
from .expr import (
    BACKEND,
    E_ONE,
    E_ZERO,
    EvalContext,
    Expr,
    arctan_,
    const,
    eval_numeric,
    exp_,
    formal_int,
    ln_,
    param,
    unk,
    x,
    y,
)
from .matching import DiffSystem, match_projective, match_strict
from .parser import parse_expr, pretty_text, to_text
from .poly import OdeSpec, PolyY, RatY
from .reduce import CaseBranch, ansatz_solve, triangularize
from .verify import VerificationReport, pde_residual, trajectory_check
from .structure import (
    DegreeProfile,
    Structure,
    abelA_structure,
    build_f,
    build_zeta,
    degree_bounds,
    generic_structure,
    parse_profile,
    profile_of,
    random_instance,
    riccati_structure,
    subs_xy,
    uc_structure,
)

__version__ = "0.1.0"
