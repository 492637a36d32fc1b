"""Quadratic-over-linear family dy/dx = (X2 y^2 + X1 y + X0)/(Y1 y + Y0).

Solution structure zeta = a1(x) y + b1(x) + ln(a2(x) y + b2(x)).  The
closed forms below give b2, a2, a1 explicitly, b1 by quadrature, and one
second-order integrability condition on Y0, all transcribed once as
grammar strings over the coefficient functions.
"""

from ..errors import RestrictionViolated, ZeroDenominator
from ..expr import E_ONE, formal_int
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

__all__ = ["abelA_solve", "ASSIGN_RHS", "CONDITIONS", "RESTRICTIONS"]

_B2_NUM = (
    "-X0^2*Y1^4 + Y1^3*X0*X1*Y0 - Y1^3*Y0*X0*diff(Y0,x)"
    " + Y1^2*diff(Y0,x)*Y0^2*X1 + Y1^2*Y0^2*X0*diff(Y1,x)"
    " - Y1*diff(Y1,x)*Y0^3*X1 - Y1*X1*X2*Y0^3 - Y1*diff(Y0,x)*X2*Y0^3"
    " + X2^2*Y0^4 + diff(Y1,x)*X2*Y0^4"
)
_B2_DEN = (
    "-4*Y1^2*diff(Y0,x)*X2*Y0 + Y1*diff(Y1,x)^2*Y0^2 + 4*Y1*X2^2*Y0^2"
    " - 4*Y1^2*X2*Y0*X1 + Y1^3*X1^2 - 2*Y1^2*diff(Y0,x)*diff(Y1,x)*Y0"
    " + 4*Y1*X2*Y0^2*diff(Y1,x) - 2*Y1^2*diff(Y1,x)*Y0*X1"
    " + Y1^3*diff(Y0,x)^2 + 2*Y1^3*diff(Y0,x)*X1"
)
_DB1_NUM = (
    "-Y1*X0*diff(Y1,x) + Y1*X1*diff(Y0,x) + Y1*X1^2 - 2*Y1*X0*X2"
    " - X1*Y0*X2 - Y0*X2*diff(Y0,x)"
)
_DB1_DEN = "Y1^2*X0 + Y0^2*X2 - Y1*X1*Y0"
_A2_NUM = "-Y1^2*X0 - Y0^2*X2 + Y1*X1*Y0"
_A2_DEN = "-diff(Y1,x)*Y0 + Y1*diff(Y0,x) + X1*Y1 - 2*X2*Y0"
_A1_NUM = (
    "2*X2*Y1*Y0 + Y1*diff(Y1,x)*Y0 - Y1^2*X1 - Y1^2*diff(Y0,x)"
)
_A1_DEN = "Y1^2*X0 + Y0^2*X2 - Y1*X1*Y0"
_D2Y0_NUM = (
    "Y1^2*X1*Y0^2*diff(X2,x) + Y1*Y0^3*diff(X2,x)*diff(Y1,x)"
    " + 3*Y1*Y0^2*X2^2*diff(Y0,x) + Y1^3*diff(X0,x)*diff(Y1,x)*Y0"
    " - Y1^3*X0*X2*diff(Y0,x) - Y1^3*X0*diff(Y0,x)*diff(Y1,x)"
    " + Y1^3*diff(X1,x)*Y0*diff(Y0,x) - Y1^2*X1^2*Y0*diff(Y1,x)"
    " - Y1^2*diff(X1,x)*Y0^2*diff(Y1,x) - Y1^2*Y0^2*X2*diff(X1,x)"
    " + Y1^2*X0*diff(Y1,x)^2*Y0 - Y1^2*Y0^2*diff(X2,x)*diff(Y0,x)"
    " - 2*Y1^2*Y0*X2*diff(Y0,x)^2 - 2*X2^3*Y0^3 + X2*X0*X1*Y1^3"
    " + 3*X2^2*Y0^2*X1*Y1 - Y1^2*X2*X1^2*Y0 - 2*Y1^2*X2^2*X0*Y0"
    " - Y1^2*X1*Y0*diff(Y0,x)*diff(Y1,x) + Y1^2*X0*X2*diff(Y1,x)*Y0"
    " - 3*Y1^2*X1*Y0*X2*diff(Y0,x) + 3*Y1*Y0^2*X2*diff(Y0,x)*diff(Y1,x)"
    " - 2*Y1^3*X0*diff(X2,x)*Y0 + 2*Y1^3*diff(X0,x)*X2*Y0"
    " - Y1*Y0^3*X2*diff(Y1,x,2) + 3*Y1*Y0^2*X2*X1*diff(Y1,x)"
    " - Y1^3*X0*diff(Y1,x,2)*Y0 + Y1^2*X1*Y0^2*diff(Y1,x,2)"
    " - Y0^3*X2*diff(Y1,x)^2 - 3*Y0^3*X2^2*diff(Y1,x)"
    " + Y1^3*X1^2*diff(Y0,x) + Y1^3*X1*diff(Y0,x)^2"
    " - Y1^4*diff(Y0,x)*diff(X0,x) - Y1^4*diff(X0,x)*X1 + Y1^4*X0*diff(X1,x)"
)
_D2Y0_DEN = "-Y1^4*X0 - Y1^2*Y0^2*X2 + Y1^3*X1*Y0"

_RESTRICTION_TEXTS = [
    "Y1*diff(Y0,x) + X1*Y1 - 2*Y0*X2 - Y0*diff(Y1,x)",
    "Y1",
    "Y1^2*X0 + Y0^2*X2 - Y1*X1*Y0",
]

#: Right-hand sides of the printed assignments; b1 is given by its slope.
ASSIGN_RHS = {
    "b2": parse_expr(f"({_B2_NUM})/({_B2_DEN})"),
    "db1": parse_expr(f"({_DB1_NUM})/({_DB1_DEN})"),
    "a2": parse_expr(f"({_A2_NUM})/({_A2_DEN})"),
    "a1": parse_expr(f"({_A1_NUM})/({_A1_DEN})"),
}

_D2Y0_RHS = parse_expr(f"({_D2Y0_NUM})/({_D2Y0_DEN})")

#: The single integrability condition, as expr = 0 and in solved form.
CONDITIONS = [
    Condition("d2Y0/dx2",
              parse_expr("diff(Y0,x,2)") - _D2Y0_RHS,
              solved=(("Y0", 2), _D2Y0_RHS)),
]

RESTRICTIONS = [(parse_expr(t), t) for t in _RESTRICTION_TEXTS]


def abelA_solve(X2, X1, X0, Y1, Y0, anchor=0, samples=None, seed=0,
                tol=1e-8):
    """Solve the family for concrete coefficient expressions.

    Returns a GeneralSolution when the integrability condition holds,
    else a ConditionReport with its residual.  Raises RestrictionViolated
    when a printed nonvanishing restriction fails.
    """
    bindings = exact_inputs(
        {"X2": X2, "X1": X1, "X0": X0, "Y1": Y1, "Y0": Y0}, "abelA")
    if samples is None:
        screen = [e for e, _ in RESTRICTIONS]
        samples = sample_points(screen, bindings, n=10, seed=seed)
    check_restrictions(RESTRICTIONS, bindings, samples, case="abelA")

    entries = [check_condition(c.expr, bindings, samples, tol=tol,
                               cond_id=c.cond_id) for c in CONDITIONS]
    if not all(e.ok for e in entries):
        return ConditionReport(case="abelA", entries=entries,
                               restrictions=[e for e, _ in RESTRICTIONS])

    subm = {(n, 0): v for n, v in bindings.items()}
    try:
        b2 = ASSIGN_RHS["b2"].substitute(unk_map=subm)
        b1 = formal_int(ASSIGN_RHS["db1"].substitute(unk_map=subm), anchor)
        a2 = ASSIGN_RHS["a2"].substitute(unk_map=subm)
        a1 = ASSIGN_RHS["a1"].substitute(unk_map=subm)
    except ZeroDenominator as exc:
        raise RestrictionViolated(
            f"abelA: an assignment denominator vanishes ({exc})") from None
    zeta = build_zeta(Structure(p1=[b1, a1], q1=[E_ONE],
                                p2=[b2, a2], q2=[E_ONE]))
    sol = CaseSolution(
        structure_kind="abelA",
        assignments={"a1": a1, "b1": b1, "a2": a2, "b2": b2},
        conditions=list(CONDITIONS),
        restrictions=[e for e, _ in RESTRICTIONS],
        general_solution=zeta,
    )
    return GeneralSolution(zeta=zeta, constant_name="c", case=sol)
