"""Independent validation of candidate general solutions.

Two witnesses, deliberately oracle-free (only diff, normalization, and
numeric evaluation are used, never the matcher or the case formulas):

* pde_residual -- the exact symbolic residual of the defining PDE
  zeta_x + f * zeta_y = 0 with the common denominator cleared; an
  exactly-zero result certifies the solution.
* trajectory_check -- numeric constancy of c(x) = zeta(x, y(x)) along a
  trajectory of dy/dx = f integrated with an embedded 4(5) pair at local
  tolerance tol/100.  Pole approaches shrink the span (never stepped
  over); the excluded windows are reported, and PoleEncountered is
  raised when less than half the requested span survives.
"""

from dataclasses import dataclass

from .errors import (
    MissingBinding,
    NonFiniteResult,
    PoleEncountered,
    StepFailure,
    ZeroDenominator,
)
from .expr import EvalContext, Expr, eval_numeric
from .parser import to_text
from .poly import RatY
from .rnf import atom_desc

__all__ = ["VerificationReport", "pde_residual", "trajectory_check"]

SKIPPED = "skipped (formal integrals present)"

_LOCAL_FACTOR = 100.0     # local integrator tolerance = tol / _LOCAL_FACTOR
_MIN_CHECKPOINTS = 50
_MIN_COVERAGE = 0.5       # below this fraction of the span, raise
_Y_CEILING = 1e10         # solution blow-up treated as a pole approach

# Fehlberg 4(5) embedded pair.
_C = (0.0, 0.25, 0.375, 12.0 / 13.0, 1.0, 0.5)
_A = (
    (),
    (0.25,),
    (3.0 / 32.0, 9.0 / 32.0),
    (1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0),
    (439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0),
    (-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0),
)
_B5 = (16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0,
       -9.0 / 50.0, 2.0 / 55.0)
_B4 = (25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -0.2, 0.0)


@dataclass
class VerificationReport:
    """Outcome of verifying one zeta against one ODE."""

    symbolic_residual: object       # Expr, or the SKIPPED marker string
    numeric_max_drift: float
    trajectory_meta: tuple          # (x0, y0, span, steps, rejected windows)

    @property
    def symbolic_ok(self):
        return isinstance(self.symbolic_residual, Expr) and \
            self.symbolic_residual.is_zero

    def passed(self, tol):
        if isinstance(self.symbolic_residual, Expr) and \
                not self.symbolic_residual.is_zero:
            return False
        return self.numeric_max_drift <= tol

    def to_json(self):
        sym = self.symbolic_residual
        x0, y0, span, steps, windows = self.trajectory_meta
        return {
            "symbolic_residual": to_text(sym) if isinstance(sym, Expr)
            else sym,
            "numeric_max_drift": self.numeric_max_drift,
            "trajectory_meta": {
                "x0": x0, "y0": y0, "span": span, "steps": steps,
                "rejected_pole_windows": [list(w) for w in windows],
            },
        }


def _f_expr(f):
    return f.to_expr() if isinstance(f, RatY) else f


def has_formal_integrals(e):
    """True when any atom of e is (or contains) a pending quadrature."""
    for aid in e.atoms():
        desc = atom_desc(aid)
        if desc[0] == "int":
            return True
        if desc[0] in ("ln", "arctan", "exp") and \
                has_formal_integrals(desc[1]):
            return True
    return False


def pde_residual(zeta, f):
    """Cleared-numerator residual of zeta_x + f * zeta_y; zero certifies."""
    fe = _f_expr(f)
    return (zeta.diff("x") + fe * zeta.diff("y")).numerator().sign_canonical()


def trajectory_check(zeta, f, x0, y0, span, tol, bindings=None):
    """Integrate dy/dx = f from (x0, y0) and watch zeta stay constant.

    Returns a VerificationReport whose numeric_max_drift is
    max |c(x) - c(x0)| / max(1, |c(x0)|) over at least 50 checkpoints
    (fewer only when a pole truncates the span; the lost window is
    recorded in trajectory_meta).  A pole is recognized by a sign change
    of f's denominator along the path (refined by bisection and never
    stepped over), by evaluation failure, or by solution blow-up.
    Raises PoleEncountered when less than half the span is reachable,
    StepFailure when the integrator stalls for a reason that is not a
    pole.
    """
    if span <= 0:
        raise ValueError("span must be positive")
    fe = _f_expr(f)
    den_e = f.den.to_expr() if isinstance(f, RatY) else f.denominator()
    ctx = EvalContext()
    bindings = bindings or {}

    def rhs(t, yv):
        return eval_numeric(fe, t, bindings, y=yv, ctx=ctx)

    def level(t, yv):
        return eval_numeric(zeta, t, bindings, y=yv, ctx=ctx)

    def den_sign(t, yv):
        try:
            v = eval_numeric(den_e, t, bindings, y=yv, ctx=ctx)
        except (NonFiniteResult, ZeroDenominator, MissingBinding):
            return None
        return 0.0 if v == 0.0 else (1.0 if v > 0.0 else -1.0)

    try:
        c0 = level(x0, y0)
        rhs(x0, y0)
    except (NonFiniteResult, ZeroDenominator) as exc:
        raise PoleEncountered(
            f"start point is on a pole ({exc})", last_safe_x=x0) from None
    scale = max(1.0, abs(c0))

    x_end = x0 + span
    n_check = _MIN_CHECKPOINTS
    checkpoints = [x0 + span * (i + 1) / n_check for i in range(n_check)]
    next_cp = 0

    local_tol = tol / _LOCAL_FACTOR
    h = span / 100.0
    h_min = span * 1e-12
    x, yv = x0, y0
    sign_here = den_sign(x0, y0)
    drift = 0.0
    steps = 0
    windows = []

    def finish(reached):
        covered = (reached - x0) / span
        if covered < _MIN_COVERAGE:
            raise PoleEncountered(
                f"pole truncates the span at x = {reached!r} "
                f"({covered:.0%} covered)", last_safe_x=reached)
        windows.append((reached, x_end))

    def truncated():
        finish(x)
        return _report(zeta, fe, c0, drift, x0, y0, span, steps, windows,
                       bindings)

    while x < x_end - h_min:
        cap = x_end - x
        if next_cp < len(checkpoints):
            cap = min(cap, checkpoints[next_cp] - x)
        h_try = min(h, cap) if cap > h_min else cap
        stepped = False
        pole_evidence = False
        while True:
            got = _rk_step(rhs, x, yv, h_try)
            if got is None:                      # evaluation failed inside
                pole_evidence = True
                h_try *= 0.5
                if h_try < h_min:
                    return truncated()
                continue
            y_new, err = got
            tol_here = local_tol * (1.0 + max(abs(yv), abs(y_new)))
            if err <= tol_here and abs(y_new) <= _Y_CEILING:
                sign_new = den_sign(x + h_try, y_new)
                if sign_here is not None and sign_new is not None and \
                        sign_here * sign_new < 0:
                    # the denominator changes sign inside (x, x + h_try):
                    # bisect toward the boundary rather than step over it
                    pole_evidence = True
                    h_try *= 0.5
                    if h_try < h_min:
                        return truncated()
                    continue
                stepped = True
                break
            if abs(y_new) > _Y_CEILING:
                pole_evidence = True
                h_try *= 0.5
            else:
                h_try *= max(0.2, min(0.9 * (tol_here / err) ** 0.2, 0.9))
            if h_try < h_min:
                break
        if not stepped:
            if pole_evidence or _pole_ahead(rhs, x, yv, max(h_try, h_min)):
                return truncated()
            raise StepFailure(
                f"step size underflow at x = {x!r} without pole evidence")

        x_new = x + h_try
        try:
            c = level(x_new, y_new)
        except (NonFiniteResult, ZeroDenominator):
            return truncated()
        drift = max(drift, abs(c - c0) / scale)
        x, yv = x_new, y_new
        if sign_new is not None:
            sign_here = sign_new
        steps += 1
        while next_cp < len(checkpoints) and \
                x >= checkpoints[next_cp] - h_min:
            next_cp += 1
        if err > 0:
            h = h_try * max(0.2, min(0.9 * (tol_here / err) ** 0.2, 5.0))
        else:
            h = h_try * 5.0

    return _report(zeta, fe, c0, drift, x0, y0, span, steps, windows,
                   bindings)


def _rk_step(rhs, x, yv, h):
    """One Fehlberg 4(5) step: (y5, error estimate), or None on a pole."""
    k = []
    try:
        for i in range(6):
            acc = 0.0
            for j, a in enumerate(_A[i]):
                acc += a * k[j]
            k.append(rhs(x + _C[i] * h, yv + h * acc))
    except (NonFiniteResult, ZeroDenominator, MissingBinding,
            OverflowError):
        return None
    y5 = yv + h * sum(b * ki for b, ki in zip(_B5, k))
    y4 = yv + h * sum(b * ki for b, ki in zip(_B4, k))
    if y5 != y5 or abs(y5) == float("inf"):
        return None
    return y5, abs(y5 - y4)


def _pole_ahead(rhs, x, yv, h):
    """Probe whether evaluation fails or blows up just past x."""
    for frac in (1.0, 0.5, 0.25):
        try:
            v = rhs(x + frac * h, yv)
        except (NonFiniteResult, ZeroDenominator):
            return True
        if abs(v) > _Y_CEILING:
            return True
    return False


def _report(zeta, fe, c0, drift, x0, y0, span, steps, windows, bindings):
    if has_formal_integrals(zeta) or has_formal_integrals(fe) or bindings:
        sym = SKIPPED
    else:
        sym = pde_residual(zeta, fe)
    return VerificationReport(
        symbolic_residual=sym,
        numeric_max_drift=drift,
        trajectory_meta=(x0, y0, span, steps, tuple(windows)),
    )
