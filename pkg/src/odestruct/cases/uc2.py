"""Full quartic-over-quadratic family with nonvanishing leading term.

dy/dx = (X4 y^4 + ... + X0)/(Y2 y^2 + Y1 y + Y0) under the structure
zeta = (a2 y^2 + a1 y + a0)/(b2 y^2 + b1 y + b0) with X4 != 0.  Two
integrability conditions constrain Y2 and Y1; the remaining coefficients
follow from a2, which itself must solve a linear second-order equation
that this module only validates or exports — solving it is delegated.
b2 comes from a linear first-order equation via an integrating factor.
"""

from ..errors import RestrictionViolated, SuppliedA2Invalid, ZeroDenominator
from ..expr import EvalContext, Expr, eval_numeric, formal_int, unk
from ..parser import parse_expr
from ..structure import Structure, build_zeta
from .common import (
    CaseSolution,
    Condition,
    ConditionReport,
    GeneralSolution,
    NeedsSecondOrderSolution,
    check_condition,
    check_restrictions,
    exact_inputs,
    sample_points,
)

__all__ = ["uc2_solve", "ASSIGN_RHS", "CONDITIONS", "RESTRICTIONS",
           "second_order_equation"]

_A1_TEXT = (
    "(Y1^2*a2*diff(Y0,x)*Y2 - 2*Y1^2*Y0*Y2*diff(a2,x) + Y1^2*a2*X1*Y2"
    " - 4*Y1*a2*X0*Y2^2 - 4*Y0^2*a2*X4*Y1 - 4*Y1*Y2*Y0*a2*X2"
    " + 8*Y2^2*Y0^2*diff(a2,x) + 4*Y2^2*Y0*a2*X1 + 8*Y2*a2*X3*Y0^2"
    " - 4*Y2^2*Y0*a2*diff(Y0,x))"
    "/(8*Y0^2*X4*Y2 - 2*Y0*X4*Y1^2)"
)
_B1_TEXT = (
    "(4*Y2^2*Y0*a2*b2*X1 + Y1^2*Y2*b2*a2*X1 + Y1^2*Y2*a2*b2*diff(Y0,x)"
    " + 2*Y2*Y0*X4*Y1^2 - 2*Y1^2*Y2*Y0*b2*diff(a2,x)"
    " + 8*Y2^2*Y0^2*b2*diff(a2,x) - 4*Y1*Y0^2*X4*a2*b2"
    " - 4*Y1*b2*Y2^2*a2*X0 - 4*Y1*Y2*Y0*b2*a2*X2 - 8*Y2^2*Y0^2*X4"
    " - 4*Y2^2*Y0*a2*b2*diff(Y0,x) + 8*Y2*a2*b2*X3*Y0^2)"
    "/(-2*Y0*a2*X4*Y1^2 + 8*Y0^2*a2*X4*Y2)"
)
_A0_TEXT = (
    "(Y1^3*a2*diff(Y0,x) + 8*Y2*Y0^2*diff(a2,x)*Y1 + 4*Y2*Y0*a2*Y1*X1"
    " - 4*Y2*Y0*Y1*a2*diff(Y0,x) - 4*Y2*Y1^2*a2*X0 - 16*a2*X4*Y0^3"
    " + 8*a2*X3*Y1*Y0^2 - 4*Y0*a2*Y1^2*X2 - 2*Y0*Y1^3*diff(a2,x)"
    " + a2*Y1^3*X1)"
    "/(16*Y0^2*X4*Y2 - 4*Y0*X4*Y1^2)"
)
_B0_TEXT = (
    "(Y1^3*a2*b2*diff(Y0,x) - 4*Y2*Y0*Y1*a2*b2*diff(Y0,x)"
    " + 8*Y2*Y0^2*b2*diff(a2,x)*Y1 - 8*Y2*Y1*Y0^2*X4"
    " + 4*Y2*Y0*a2*Y1*b2*X1 - 4*Y0*b2*a2*Y1^2*X2 - 4*Y2*Y1^2*b2*a2*X0"
    " - 16*a2*b2*X4*Y0^3 + 8*a2*b2*X3*Y1*Y0^2 + 2*Y0*Y1^3*X4"
    " - 2*Y0*b2*Y1^3*diff(a2,x) + b2*a2*Y1^3*X1)"
    "/(-4*Y0*a2*X4*Y1^2 + 16*Y0^2*a2*X4*Y2)"
)
_DB2_TEXT = "(-(-diff(a2,x)*b2 + X4))/(a2)"
_D2A2_TEXT = (
    "(8*a2*Y0*X4*X0*X3*Y1 + 8*Y2*a2*Y0^2*X1*diff(X4,x)"
    " - 2*a2*Y0*X4*Y1^2*diff(X1,x) - 8*a2*Y0^2*Y1*X2*diff(X4,x)"
    " + 8*a2*Y0^2*Y1*X4*diff(X2,x) + 2*a2*Y0*Y1^2*diff(X4,x)*diff(Y0,x)"
    " + 2*a2*Y0*Y1^2*diff(X4,x)*X1 + 4*Y2*a2*Y0*X1^2*X4"
    " - 16*a2*Y0^2*X4^2*X0 - 16*a2*Y0^3*X4*diff(X3,x)"
    " - a2*X4*Y1^2*X1^2 + a2*X4*diff(Y0,x)^2*Y1^2"
    " - 16*X4*X0^2*a2*Y2^2 - 16*Y2*a2*Y0*X4*X0*X2"
    " + 8*Y2*a2*X4*X1*X0*Y1 + 16*Y2*Y0^3*diff(a2,x)*diff(X4,x)"
    " - 4*Y0^2*Y1^2*diff(X4,x)*diff(a2,x) + 16*a2*Y0^3*X3*diff(X4,x)"
    " - 8*Y2*a2*Y0^2*X4*diff(X1,x) + 8*Y2*a2*Y0*Y1*X4*diff(X0,x)"
    " - 4*Y2*a2*Y0*X4*diff(Y0,x)^2 - 8*Y2*a2*Y0^2*diff(Y0,x)*diff(X4,x)"
    " - 2*a2*Y0*X4*Y1^2*diff(Y0,x,2) + 8*Y2*a2*Y0^2*X4*diff(Y0,x,2)"
    " - 8*Y2*a2*Y0*Y1*X0*diff(X4,x))"
    "/(-4*Y1^2*Y0^2*X4 + 16*Y0^3*X4*Y2)"
)
_DY2_TEXT = (
    "(-Y1^2*Y0*X3 - Y1^2*X1*Y2 - Y1^2*diff(Y0,x)*Y2 + 4*Y1*Y0*Y2*X2"
    " + 4*Y1*Y0^2*X4 + 4*Y1*Y2^2*X0 - 4*Y0*Y2^2*X1"
    " + 4*Y0*Y2^2*diff(Y0,x) - 4*Y2*Y0^2*X3)/(4*Y0^2*Y2 - Y1^2*Y0)"
)
_DY1_TEXT = (
    "(8*X0*Y0*Y2^2 - 4*Y2*diff(Y0,x)*Y1*Y0 - 4*Y2*X0*Y1^2 - 8*X4*Y0^3"
    " + 4*X3*Y1*Y0^2 - 2*Y0*Y1^2*X2 + Y1^3*X1 + Y1^3*diff(Y0,x))"
    "/(-4*Y0^2*Y2 + Y1^2*Y0)"
)

_RESTRICTION_TEXTS = ["a2", "X4", "Y0", "4*Y0*Y2 - Y1^2"]

#: Printed assignment right-hand sides over X0..X4, Y0..Y2, a2, b2.
ASSIGN_RHS = {
    "a1": parse_expr(_A1_TEXT),
    "b1": parse_expr(_B1_TEXT),
    "a0": parse_expr(_A0_TEXT),
    "b0": parse_expr(_B0_TEXT),
    "db2": parse_expr(_DB2_TEXT),
}

#: Solved form of the auxiliary second-order constraint on a2.
D2A2_RHS = parse_expr(_D2A2_TEXT)

CONDITIONS = [
    Condition("dY2/dx", unk("Y2", 1) - parse_expr(_DY2_TEXT),
              solved=(("Y2", 1), parse_expr(_DY2_TEXT))),
    Condition("dY1/dx", unk("Y1", 1) - parse_expr(_DY1_TEXT),
              solved=(("Y1", 1), parse_expr(_DY1_TEXT))),
]

RESTRICTIONS = [(parse_expr(t), t) for t in _RESTRICTION_TEXTS]


def second_order_equation(bindings):
    """The a2 constraint (= 0, normalized) with known coefficients bound."""
    subm = {(n, 0): v for n, v in bindings.items()}
    e = (unk("a2", 2) - D2A2_RHS).substitute(unk_map=subm)
    return e.numerator().sign_canonical()


def uc2_solve(X0, X1, X2, X3, X4, Y0, Y1, Y2, a2_solution=None, anchor=0,
              samples=None, seed=0, tol=1e-8):
    """Solve the family given a nonvanishing solution of the a2 equation.

    Returns a GeneralSolution when the conditions hold and a valid
    a2_solution (expression or numeric callable) is supplied; a
    NeedsSecondOrderSolution carrying the a2 equation when conditions
    hold but a2 is omitted; a ConditionReport otherwise.  Raises
    RestrictionViolated or SuppliedA2Invalid on bad inputs.
    """
    bindings = exact_inputs(
        {"X0": X0, "X1": X1, "X2": X2, "X3": X3, "X4": X4,
         "Y0": Y0, "Y1": Y1, "Y2": Y2}, "uc2")
    coeff_restrictions = [(e, t) for e, t in RESTRICTIONS if t != "a2"]
    if samples is None:
        samples = sample_points([e for e, _ in coeff_restrictions],
                                bindings, n=10, seed=seed)
    check_restrictions(coeff_restrictions, bindings, samples, case="uc2")

    entries = [check_condition(c.expr, bindings, samples, tol=tol,
                               cond_id=c.cond_id) for c in CONDITIONS]
    if not all(e.ok for e in entries):
        return ConditionReport(case="uc2", entries=entries,
                               restrictions=[e for e, _ in RESTRICTIONS])

    if a2_solution is None:
        return NeedsSecondOrderSolution(
            case="uc2", unknown="a2",
            equation=second_order_equation(bindings), entries=entries)

    a2, a2_binding = _accept_a2(a2_solution, bindings, samples, tol)

    subm = {(n, 0): v for n, v in bindings.items()}
    if isinstance(a2, Expr):
        subm[("a2", 0)] = a2
        a2_term = a2
    else:
        a2_term = unk("a2")
    try:
        integrand = bindings["X4"] / (a2_term * a2_term)
        b2 = -(a2_term * formal_int(integrand, anchor))
        subm[("b2", 0)] = b2
        a1 = ASSIGN_RHS["a1"].substitute(unk_map=subm)
        b1 = ASSIGN_RHS["b1"].substitute(unk_map=subm)
        a0 = ASSIGN_RHS["a0"].substitute(unk_map=subm)
        b0 = ASSIGN_RHS["b0"].substitute(unk_map=subm)
    except ZeroDenominator as exc:
        raise RestrictionViolated(
            f"uc2: an assignment denominator vanishes ({exc})") from None
    zeta = build_zeta(Structure(p1=[a0, a1, a2_term], q1=[b0, b1, b2]))
    sol = CaseSolution(
        structure_kind="uc2",
        assignments={"a0": a0, "a1": a1, "a2": a2_term,
                     "b0": b0, "b1": b1, "b2": b2},
        conditions=list(CONDITIONS),
        restrictions=[e for e, _ in RESTRICTIONS],
        general_solution=zeta,
    )
    return GeneralSolution(zeta=zeta, constant_name="c", case=sol,
                           bindings=a2_binding)


def _accept_a2(a2_solution, bindings, samples, tol):
    """Validate the supplied a2 against its second-order equation."""
    residual = unk("a2", 2) - D2A2_RHS
    if callable(a2_solution):
        full = dict(bindings)
        full["a2"] = a2_solution
        ctx = EvalContext()
        worst = 0.0
        for t in samples:
            worst = max(worst, abs(eval_numeric(residual, t, full, ctx=ctx)))
        if worst > tol:
            raise SuppliedA2Invalid(
                f"uc2: supplied a2 leaves residual {worst:.3e}",
                residual=worst)
        return a2_solution, {"a2": a2_solution}

    a2 = exact_inputs({"a2": a2_solution}, "uc2")["a2"]
    if a2.is_zero:
        raise RestrictionViolated(
            "uc2: the vanishing a2 branch is excluded", restriction="a2")
    sub = residual.substitute(
        unk_map={**{(n, 0): v for n, v in bindings.items()}, ("a2", 0): a2})
    if not sub.is_zero:
        raise SuppliedA2Invalid(
            "uc2: supplied a2 does not solve its equation", residual=sub)
    return a2, {}
