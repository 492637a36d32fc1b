"""Quadratic family dy/dx = X2 y^2 + X1 y + X0 under a Moebius ansatz.

zeta = (a1(x) y + a0(x))/(b1(x) y + b0(x)).  This route is
verification-grade, not autonomous: the caller must supply a particular
solution a0 of the family's second-order linear constraint (numeric
callables take (x, order) and must supply derivatives).  -b0 is a
particular solution of the original equation; it may be supplied, or
searched for by a low-degree polynomial ansatz.  b1 is pinned to 1,
which spends the ansatz's joint scale freedom.
"""

from ..errors import (
    DegenerateStructure,
    ParticularSolutionInvalid,
    RestrictionViolated,
    SearchExhausted,
    ZeroDenominator,
)
from ..expr import E_ONE, Expr, unk
from ..matching import DiffSystem
from ..parser import parse_expr
from ..reduce import ansatz_solve
from ..structure import Structure, build_zeta
from .common import (
    CaseSolution,
    Condition,
    GeneralSolution,
    check_condition,
    exact_inputs,
    sample_points,
)

__all__ = ["riccati_case", "ASSIGN_RHS", "CONDITIONS", "RESTRICTIONS"]

_A1_TEXT = (
    "(-a0*X2*b0 - diff(a0,x)*b1 + X1*b1*a0 + a0*diff(b1,x))/(b1*X0)"
)
_D2A0_TEXT = (
    "(-b1*X0*a0*diff(X2,x)*b0 - 2*b1*X0*diff(a0,x)*X2*b0"
    " + b1*X0*a0*diff(b1,x,2) - b1*X0*X1*diff(b1,x)*a0"
    " + b1^2*X0*X1*diff(a0,x) + b1^2*X0*diff(X1,x)*a0"
    " - 2*diff(b1,x)^2*X0*a0 + 2*X0*X2*b0*a0*diff(b1,x)"
    " + 2*diff(b1,x)*X0*diff(a0,x)*b1 - b1*diff(X0,x)*a0*diff(b1,x)"
    " + b1*diff(X0,x)*a0*X2*b0 + b1^2*diff(X0,x)*diff(a0,x)"
    " - b1^2*diff(X0,x)*X1*a0)/(X0*b1^2)"
)
_DB0_TEXT = "(-X0*b1^2 + b1*b0*X1 - b0^2*X2 + b0*diff(b1,x))/(b1)"

_RESTRICTION_TEXTS = ["b1", "X0"]

#: Printed assignment right-hand side for a1 over X0..X2, a0, b0, b1.
ASSIGN_RHS = {"a1": parse_expr(_A1_TEXT)}

#: Constraints pinning the supplied functions: a second-order linear
#: equation for a0 and a first-order quadratic one for b0 (-b0 solves
#: the original equation).
CONDITIONS = [
    Condition("d2a0/dx2", unk("a0", 2) - parse_expr(_D2A0_TEXT),
              solved=(("a0", 2), parse_expr(_D2A0_TEXT))),
    Condition("db0/dx", unk("b0", 1) - parse_expr(_DB0_TEXT),
              solved=(("b0", 1), parse_expr(_DB0_TEXT))),
]

RESTRICTIONS = [(parse_expr(t), t) for t in _RESTRICTION_TEXTS]

_COND_A0 = CONDITIONS[0]
_COND_B0 = CONDITIONS[1]


def riccati_case(X2, X1, X0, a0_particular, b0_particular=None,
                 ansatz_degree=3, samples=None, seed=0, tol=1e-8):
    """Assemble zeta from a particular a0 (and b0, found if omitted).

    a0_particular and b0_particular may be expressions (validated
    symbolically) or callables (x, order) -> float (validated at sample
    points).  Raises ParticularSolutionInvalid when a supplied function
    fails its constraint, SearchExhausted when no polynomial b0 of
    degree <= ansatz_degree is compatible, DegenerateStructure when the
    assembled zeta loses its y-dependence.
    """
    coeffs = exact_inputs({"X0": X0, "X1": X1, "X2": X2}, "riccati")
    if coeffs["X0"].is_zero:
        raise RestrictionViolated(
            "riccati: X0 must not vanish identically",
            restriction="X0", where="identically")
    subm = {(n, 0): v for n, v in coeffs.items()}
    subm[("b1", 0)] = E_ONE

    a0 = a0_particular if callable(a0_particular) else \
        exact_inputs({"a0": a0_particular}, "riccati")["a0"]
    if samples is None:
        samples = sample_points([coeffs["X0"]], coeffs, n=10, seed=seed)

    if b0_particular is not None:
        b0 = b0_particular if callable(b0_particular) else \
            exact_inputs({"b0": b0_particular}, "riccati")["b0"]
        _require(_COND_B0, {**coeffs, "b1": E_ONE, "b0": b0},
                 samples, tol, "riccati: supplied b0")
        return _assemble(coeffs, subm, a0, b0, samples, tol)

    candidates = _b0_candidates(subm, ansatz_degree)
    last_error = None
    for b0 in candidates:
        try:
            return _assemble(coeffs, subm, a0, b0, samples, tol)
        except (ParticularSolutionInvalid, DegenerateStructure) as exc:
            last_error = exc
    if last_error is not None:
        raise ParticularSolutionInvalid(
            "riccati: a0 is incompatible with every particular b0 found "
            f"(last: {last_error})",
            residual=getattr(last_error, "residual", None))
    raise SearchExhausted(
        f"riccati: no polynomial b0 of degree <= {ansatz_degree}")


def _b0_candidates(subm, ansatz_degree):
    """Polynomial solutions of the b0 equation, lowest degree first."""
    rhs = _COND_B0.solved[1].substitute(unk_map=subm)
    equation = (unk("b0", 1) - rhs).numerator().sign_canonical()
    sys = DiffSystem(mode="differential", unknowns=["b0"],
                     equations=[equation])
    out, seen = [], set()
    for degree in range(ansatz_degree + 1):
        try:
            branches = ansatz_solve(sys, degree)
        except SearchExhausted:
            continue
        for assignments, _ in branches:
            cand = assignments["b0"]
            if cand not in seen:
                seen.add(cand)
                out.append(cand)
    return out


def _require(cond, bindings, samples, tol, label):
    entry = check_condition(cond.expr, bindings, samples, tol=tol,
                            cond_id=cond.cond_id)
    if not entry.ok:
        residual = entry.residual_sym if entry.residual_sym is not None \
            else entry.residual_num
        raise ParticularSolutionInvalid(
            f"{label} does not satisfy its equation ({cond.cond_id})",
            residual=residual)
    return entry


def _assemble(coeffs, subm, a0, b0, samples, tol):
    bindings = {**coeffs, "b1": E_ONE, "a0": a0, "b0": b0}
    _require(_COND_A0, bindings, samples, tol, "riccati: supplied a0")

    numeric = {}
    local = dict(subm)
    if isinstance(a0, Expr):
        local[("a0", 0)] = a0
        a0_term = a0
    else:
        numeric["a0"] = a0
        a0_term = unk("a0")
    if isinstance(b0, Expr):
        local[("b0", 0)] = b0
        b0_term = b0
    else:
        numeric["b0"] = b0
        b0_term = unk("b0")
    try:
        a1 = ASSIGN_RHS["a1"].substitute(unk_map=local)
    except ZeroDenominator as exc:
        raise RestrictionViolated(
            f"riccati: the a1 denominator vanishes ({exc})") from None
    if not numeric and (a1 * b0_term - a0_term).is_zero:
        raise DegenerateStructure(
            "riccati: a1*b0 - a0 vanishes, zeta does not depend on y")

    zeta = build_zeta(Structure(p1=[a0_term, a1], q1=[b0_term, E_ONE]))
    sol = CaseSolution(
        structure_kind="riccati",
        assignments={"a0": a0_term, "a1": a1, "b0": b0_term, "b1": E_ONE},
        conditions=list(CONDITIONS),
        restrictions=[e for e, _ in RESTRICTIONS],
        general_solution=zeta,
    )
    return GeneralSolution(zeta=zeta, constant_name="c", case=sol,
                           bindings=numeric)
