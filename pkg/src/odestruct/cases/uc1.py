"""Quartic-over-quadratic family with vanishing leading numerator term.

dy/dx = (X3 y^3 + X2 y^2 + X1 y + X0)/(Y2 y^2 + Y1 y + Y0), the X4 = 0
slice of the quadratic-over-quadratic structure
zeta = (a2 y^2 + a1 y + a0)/(b2 y^2 + b1 y + b0), solved with a2 = 0:
b2 is an exponential of an integral (hence nonvanishing), b0 follows from
a linear first-order equation via an integrating factor, and a1, a0, b1
are explicit.  Three integrability conditions constrain Y2, Y1, and X4.
"""

from ..errors import RestrictionViolated, ZeroDenominator
from ..expr import E_ONE, E_ZERO, const, exp_, formal_int, unk
from ..parser import parse_expr
from ..structure import Structure, build_zeta
from .common import (
    CaseSolution,
    Condition,
    ConditionReport,
    GeneralSolution,
    check_condition,
    check_restrictions,
    exact_inputs,
    sample_points,
)

__all__ = ["uc1_solve", "ASSIGN_RHS", "CONDITIONS", "RESTRICTIONS"]

_DB0_RHS_TEXT = (
    "(-(4*X0*b0*Y2 + 4*X0*Y0*b2 - b0*Y1*X1 - b0*Y1*diff(Y0,x)))"
    "/(2*Y1*Y0)"
)
_DB2_RHS_TEXT = (
    "(-4*Y2*b2*Y0*X1 + 4*Y2*b2*Y1*X0 + 4*Y2*b2*Y0*diff(Y0,x)"
    " - b2*Y1^2*diff(Y0,x) - 8*X3*b2*Y0^2 - b2*Y1^2*X1 + 4*b2*Y1*Y0*X2)"
    "/(-2*Y1^2*Y0 + 8*Y0^2*Y2)"
)
_DY2_RHS_TEXT = (
    "(-Y1^2*Y0*X3 - Y1^2*X1*Y2 - Y1^2*diff(Y0,x)*Y2 + 4*Y1*Y2^2*X0"
    " + 4*Y1*Y0*Y2*X2 - 4*Y0*Y2^2*X1 + 4*Y0*Y2^2*diff(Y0,x)"
    " - 4*Y2*Y0^2*X3)/(4*Y0^2*Y2 - Y1^2*Y0)"
)
_DY1_RHS_TEXT = (
    "(-8*X0*Y0*Y2^2 + 4*Y2*X0*Y1^2 + 4*Y2*diff(Y0,x)*Y1*Y0 - Y1^3*X1"
    " - Y1^3*diff(Y0,x) + 2*Y0*Y1^2*X2 - 4*X3*Y1*Y0^2)"
    "/(4*Y0^2*Y2 - Y1^2*Y0)"
)

_RESTRICTION_TEXTS = ["Y0", "Y1", "4*Y0*Y2 - Y1^2"]

#: Printed assignment right-hand sides; the slopes of b0 and b2 are
#: linear in (b0, b2), which the solver exploits below.
ASSIGN_RHS = {
    "a1": parse_expr("(Y2)/(b2)"),
    "b1": parse_expr("(2*b0*Y2 + 2*b2*Y0)/(Y1)"),
    "a0": parse_expr("(Y1)/(2*b2)"),
    "db0": parse_expr(_DB0_RHS_TEXT),
    "db2": parse_expr(_DB2_RHS_TEXT),
    "a2": E_ZERO,
}

CONDITIONS = [
    Condition("dY2/dx", unk("Y2", 1) - parse_expr(_DY2_RHS_TEXT),
              solved=(("Y2", 1), parse_expr(_DY2_RHS_TEXT))),
    Condition("dY1/dx", unk("Y1", 1) - parse_expr(_DY1_RHS_TEXT),
              solved=(("Y1", 1), parse_expr(_DY1_RHS_TEXT))),
    Condition("X4", unk("X4"), solved=(("X4", 0), E_ZERO)),
]

RESTRICTIONS = [(parse_expr(t), t) for t in _RESTRICTION_TEXTS]

#: Slope of ln(b2): the b2 equation is linear-homogeneous in b2.
LOG_B2_SLOPE = ASSIGN_RHS["db2"].substitute(unk_map={("b2", 0): E_ONE})

#: b0' = B0_SLOPE_SELF * b0 + B0_SLOPE_B2 * b2 (linear first order).
B0_SLOPE_SELF = ASSIGN_RHS["db0"].substitute(
    unk_map={("b0", 0): E_ONE, ("b2", 0): E_ZERO})
B0_SLOPE_B2 = ASSIGN_RHS["db0"].substitute(
    unk_map={("b0", 0): E_ZERO, ("b2", 0): E_ONE})


def uc1_solve(X0, X1, X2, X3, Y0, Y1, Y2, X4=None, anchor=0, samples=None,
              seed=0, tol=1e-8):
    """Solve the family for concrete coefficient expressions.

    X4 defaults to zero; a nonzero X4 fails the X4 condition and comes
    back in the ConditionReport.  Returns a GeneralSolution when all
    three conditions hold.  Raises RestrictionViolated when a printed
    nonvanishing restriction fails (b2 != 0 holds by construction).
    """
    bindings = exact_inputs(
        {"X0": X0, "X1": X1, "X2": X2, "X3": X3,
         "X4": E_ZERO if X4 is None else X4,
         "Y0": Y0, "Y1": Y1, "Y2": Y2}, "uc1")
    if samples is None:
        screen = [e for e, _ in RESTRICTIONS]
        samples = sample_points(screen, bindings, n=10, seed=seed)
    check_restrictions(RESTRICTIONS, bindings, samples, case="uc1")

    entries = [check_condition(c.expr, bindings, samples, tol=tol,
                               cond_id=c.cond_id) for c in CONDITIONS]
    if not all(e.ok for e in entries):
        return ConditionReport(case="uc1", entries=entries,
                               restrictions=[e for e, _ in RESTRICTIONS])

    subm = {(n, 0): v for n, v in bindings.items()}
    try:
        b2 = exp_(formal_int(LOG_B2_SLOPE.substitute(unk_map=subm), anchor))
        a1 = bindings["Y2"] / b2
        a0 = bindings["Y1"] / (const(2) * b2)
        alpha = B0_SLOPE_SELF.substitute(unk_map=subm)
        beta = B0_SLOPE_B2.substitute(unk_map=subm)
        mu = exp_(formal_int(alpha, anchor))
        b0 = mu * formal_int(beta * b2 / mu, anchor)
        b1 = ASSIGN_RHS["b1"].substitute(
            unk_map={**subm, ("b0", 0): b0, ("b2", 0): b2})
    except ZeroDenominator as exc:
        raise RestrictionViolated(
            f"uc1: an assignment denominator vanishes ({exc})") from None
    zeta = build_zeta(Structure(p1=[a0, a1], q1=[b0, b1, b2]))
    sol = CaseSolution(
        structure_kind="uc1",
        assignments={"a0": a0, "a1": a1, "a2": E_ZERO,
                     "b0": b0, "b1": b1, "b2": b2},
        conditions=list(CONDITIONS),
        restrictions=[e for e, _ in RESTRICTIONS],
        general_solution=zeta,
    )
    return GeneralSolution(zeta=zeta, constant_name="c", case=sol)
