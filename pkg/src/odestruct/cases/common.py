"""Shared plumbing for the worked case families.

Each case module transcribes its printed closed-form solution once, as
grammar strings parsed at import time, over unknown coefficient functions
(X0..X4, Y0..Y2) and structure coefficients (a0..a2, b0..b2).  The helpers
here substitute concrete inputs, enforce nonvanishing restrictions, evaluate
integrability conditions symbolically and at sample points, and rewrite
expressions modulo the conditions' solved forms (used by the fixture
cross-checks that guard the transcriptions).
"""

import random
from dataclasses import dataclass, field

from ..errors import (
    ExhaustedRetries,
    MissingBinding,
    NonFiniteResult,
    RestrictionViolated,
    ZeroDenominator,
)
from ..expr import EvalContext, Expr, const, eval_numeric
from ..parser import to_text
from ..rnf import R_ONE, atom_desc

__all__ = [
    "CaseSolution",
    "Condition",
    "ConditionReport",
    "ConditionResidual",
    "GeneralSolution",
    "NeedsSecondOrderSolution",
    "check_condition",
    "check_restrictions",
    "formal_integrals_of",
    "reduce_modulo",
    "sample_points",
]


@dataclass(frozen=True)
class Condition:
    """One integrability condition: `expr = 0` plus its solved form.

    The solved form ((name, order), rhs) states the same constraint as
    "derivative of `name` at `order` equals rhs" and drives the rewrite
    used by the fixture cross-checks.
    """

    cond_id: str
    expr: Expr
    solved: tuple = None


@dataclass
class ConditionResidual:
    """Outcome of checking one condition against concrete inputs."""

    cond_id: str
    residual_sym: Expr = None       # None when inputs are numeric-only
    residual_num: float = None      # max |residual| over the sample points
    argmax_x: float = None
    ok: bool = False

    def to_json(self):
        return {
            "id": self.cond_id,
            "residual_sym": None if self.residual_sym is None
            else to_text(self.residual_sym),
            "residual_num": self.residual_num,
        }


@dataclass
class ConditionReport:
    """Returned instead of a solution when integrability conditions fail."""

    case: str
    entries: list
    restrictions: list = field(default_factory=list)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def to_json(self):
        return {
            "case": self.case,
            "conditions": [e.to_json() for e in self.entries],
            "restrictions": [to_text(r) for r in self.restrictions],
            "zeta": None,
            "formal_integrals": [],
        }


@dataclass
class CaseSolution:
    """A case family's assignments, conditions, and restrictions.

    `assignments` map coefficient names to concrete expressions (possibly
    carrying formal integrals); `conditions` and `restrictions` stay in
    generic form over the coefficient functions X0..X4, Y0..Y2.
    """

    structure_kind: str
    assignments: dict
    conditions: list
    restrictions: list
    general_solution: Expr

    def to_json(self):
        return {
            "case": self.structure_kind,
            "assignments": {k: to_text(v)
                            for k, v in sorted(self.assignments.items())},
            "conditions": [{"id": c.cond_id, "expr": f"{to_text(c.expr)}=0"}
                           for c in self.conditions],
            "restrictions": [f"{to_text(r)}<>0" for r in self.restrictions],
            "zeta": to_text(self.general_solution),
        }


@dataclass
class GeneralSolution:
    """An implicit general solution zeta(x, y) = c.

    `bindings` carries numeric callables for any coefficient that was
    supplied as a function rather than an expression; they are forwarded
    to numeric evaluation.
    """

    zeta: Expr
    constant_name: str = "c"
    case: CaseSolution = None
    bindings: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "zeta": to_text(self.zeta),
            "constant_name": self.constant_name,
            "case": None if self.case is None else self.case.to_json(),
            "formal_integrals": [to_text(g)
                                 for g in formal_integrals_of(self.zeta)],
        }


@dataclass
class NeedsSecondOrderSolution:
    """Conditions hold, but an auxiliary second-order ODE must be solved.

    `equation` is the normalized constraint (= 0) on the named unknown,
    with all known coefficients substituted.
    """

    case: str
    unknown: str
    equation: Expr
    entries: list = field(default_factory=list)

    def to_json(self):
        return {
            "case": self.case,
            "needs": self.unknown,
            "equation": f"{to_text(self.equation)}=0",
            "conditions": [e.to_json() for e in self.entries],
        }


def _symbolic_value(v):
    """The exact-expression form of a binding value, or None."""
    if isinstance(v, Expr):
        return v
    if isinstance(v, int) or type(v) is type(R_ONE):
        return const(v)
    return None


def _all_expressions(bindings):
    return all(_symbolic_value(v) is not None for v in bindings.values())


def _unk_map(bindings):
    return {(name, 0): _symbolic_value(v) for name, v in bindings.items()}


def exact_inputs(bindings, case):
    """Coerce coefficient inputs to exact expressions; reject callables."""
    out = {}
    for k, v in bindings.items():
        e = _symbolic_value(v)
        if e is None:
            raise TypeError(
                f"{case}: coefficient {k} must be an exact expression")
        out[k] = e
    return out


def sample_points(exprs, bindings=None, n=10, seed=0, lo=-2.0, hi=2.0,
                  max_tries=500):
    """Deterministic sample xs where every given expression evaluates finitely.

    Used to pick pole-free windows for numeric condition and restriction
    checks; rejection-samples uniformly over [lo, hi].
    """
    rng = random.Random(seed)
    ctx = EvalContext()
    xs = []
    for _ in range(max_tries):
        if len(xs) >= n:
            break
        t = rng.uniform(lo, hi)
        try:
            for e in exprs:
                eval_numeric(e, t, bindings, ctx=ctx)
        except (NonFiniteResult, ZeroDenominator):
            continue
        xs.append(t)
    if len(xs) < n:
        raise ExhaustedRetries(
            f"could not find {n} pole-free sample points in [{lo}, {hi}]")
    return sorted(xs)


def check_condition(cond, bindings, sample_xs, tol=1e-8, cond_id="condition"):
    """Evaluate one condition expression against concrete coefficients.

    Returns a ConditionResidual with the symbolic residual (when every
    binding is an expression or number) and the max |residual| over the
    sample points.  Raises MissingBinding when a referenced coefficient
    has no binding at all.
    """
    for name, _ in cond.unknowns():
        if name not in bindings:
            raise MissingBinding(f"no binding for coefficient {name!r}")
    residual_sym = None
    if _all_expressions(bindings):
        residual_sym = cond.substitute(unk_map=_unk_map(bindings))
    target = residual_sym if residual_sym is not None else cond
    ctx = EvalContext()
    best = None
    argmax = None
    for t in sample_xs:
        try:
            v = abs(eval_numeric(target, t, bindings, ctx=ctx))
        except (NonFiniteResult, ZeroDenominator):
            continue
        if best is None or v > best:
            best, argmax = v, t
    ok = (residual_sym is not None and residual_sym.is_zero) or \
        (best is not None and best <= tol)
    return ConditionResidual(cond_id=cond_id, residual_sym=residual_sym,
                             residual_num=best, argmax_x=argmax, ok=ok)


def check_restrictions(pairs, bindings, sample_xs, case, zero_tol=1e-9):
    """Enforce nonvanishing restrictions; raise RestrictionViolated.

    `pairs` is a list of (generic Expr, display text).  Expression inputs
    are decided symbolically; callable inputs numerically at the samples.
    """
    symbolic = _all_expressions(bindings)
    ctx = EvalContext()
    for expr, text in pairs:
        if symbolic:
            try:
                sub = expr.substitute(unk_map=_unk_map(bindings))
            except ZeroDenominator:
                raise RestrictionViolated(
                    f"{case}: restriction {text} hit a vanishing denominator",
                    restriction=text) from None
            if sub.is_zero:
                raise RestrictionViolated(
                    f"{case}: restriction {text} is identically zero",
                    restriction=text, where="identically")
            continue
        vals = []
        for t in sample_xs:
            try:
                vals.append((abs(eval_numeric(expr, t, bindings, ctx=ctx)), t))
            except (NonFiniteResult, ZeroDenominator):
                continue
        if vals and max(v for v, _ in vals) <= zero_tol:
            raise RestrictionViolated(
                f"{case}: restriction {text} vanishes at all sampled points",
                restriction=text, where=vals[0][1])


def reduce_modulo(e, conditions, rounds=8):
    """Rewrite an expression modulo the conditions' solved forms.

    Substitutes each solved derivative by its right-hand side, iterating
    to a fixpoint; with the printed cases the first pass already lands.
    """
    m = {c.solved[0]: c.solved[1] for c in conditions if c.solved}
    if not m:
        return e
    cur = e
    for _ in range(rounds):
        nxt = cur.substitute(unk_map=m)
        if nxt == cur:
            return nxt
        cur = nxt
    return cur


def formal_integrals_of(e):
    """All distinct formal-integral subterms of an expression, recursively."""
    from ..expr import _atom_expr

    seen = set()
    out = []

    def visit(expr):
        for aid in sorted(expr.atoms()):
            if aid in seen:
                continue
            seen.add(aid)
            desc = atom_desc(aid)
            if desc[0] in ("ln", "arctan", "exp"):
                visit(desc[1])
            elif desc[0] == "int":
                visit(desc[1])
                out.append(_atom_expr(aid))

    visit(e)
    return out
