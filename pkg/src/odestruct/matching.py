"""Coefficient matching: equate a structure's induced f with a target ODE.

match_strict follows the worked families' convention: when both
denominators are y-free the single ratio is cross-multiplied per numerator
power (den != 0 recorded as an inequation); otherwise numerator and
denominator coefficients are equated power by power with the common scale
fixed to 1.  match_projective only cross-multiplies, tolerating a common
factor between the two representations.
"""

from dataclasses import dataclass, field

from .errors import DegreeMismatch
from .structure import build_f, degree_bounds, profile_of

__all__ = ["DiffSystem", "match_strict", "match_projective"]


@dataclass
class DiffSystem:
    mode: str
    unknowns: list
    equations: list                       # Expr, each asserted = 0
    inequations: list = field(default_factory=list)   # Expr, each asserted != 0
    provenance: list = field(default_factory=list)    # dicts {power, side}

    def to_json(self):
        from .parser import to_text

        return {
            "mode": self.mode,
            "unknowns": list(self.unknowns),
            "equations": [f"{to_text(e)}=0" for e in self.equations],
            "inequations": [f"{to_text(e)}<>0" for e in self.inequations],
            "provenance": [dict(p) for p in self.provenance],
        }


_SIDE_ORDER = {"num": 0, "den": 1, "cross": 2}


def _check_degrees(s, ode):
    n_p_max, n_q_max, _, _ = degree_bounds(profile_of(s))
    if ode.f.num.degree > n_p_max or ode.f.den.degree > n_q_max:
        raise DegreeMismatch(
            f"ode degrees ({ode.f.num.degree}, {ode.f.den.degree}) exceed the "
            f"structure's bounds ({n_p_max}, {n_q_max})")


def _emit(rows, unknowns, mode, inequations):
    """Normalize, drop vanished rows, order by side then power descending."""
    rows = [(side, k, e.numerator().sign_canonical()) for side, k, e in rows]
    rows = [r for r in rows if not r[2].is_zero]
    rows.sort(key=lambda r: (_SIDE_ORDER[r[0]], -r[1]))
    seen = set()
    equations = []
    provenance = []
    for side, k, e in rows:
        if e in seen:
            continue
        seen.add(e)
        equations.append(e)
        provenance.append({"power": k, "side": side})
    return DiffSystem(mode=mode, unknowns=list(unknowns), equations=equations,
                      inequations=[e for e in inequations if not e.is_zero],
                      provenance=provenance)


def match_strict(s, ode):
    """Equate build_f(s) with the ODE coefficient-by-coefficient in y."""
    _check_degrees(s, ode)
    fs = build_f(s)
    fo = ode.f
    unknowns = s.unknown_names()
    rows = []
    if fs.den.degree == 0 and fo.den.degree == 0:
        ds = fs.den.coeff(0)
        do = fo.den.coeff(0)
        for k in range(max(fs.num.degree, fo.num.degree), -1, -1):
            rows.append(("num", k, fs.num.coeff(k) * do - fo.num.coeff(k) * ds))
        return _emit(rows, unknowns, "strict", [ds.sign_canonical()])
    for k in range(max(fs.num.degree, fo.num.degree), -1, -1):
        rows.append(("num", k, fs.num.coeff(k) - fo.num.coeff(k)))
    for k in range(max(fs.den.degree, fo.den.degree), -1, -1):
        rows.append(("den", k, fs.den.coeff(k) - fo.den.coeff(k)))
    return _emit(rows, unknowns, "strict", [])


def match_projective(s, ode):
    """Equate the cross product num_s*den_o - num_o*den_s to zero in y."""
    _check_degrees(s, ode)
    fs = build_f(s)
    fo = ode.f
    cross = fs.num * fo.den - fo.num * fs.den
    rows = [("cross", k, cross.coeff(k)) for k in range(cross.degree, -1, -1)]
    den_s = fs.den.to_expr().numerator().sign_canonical()
    return _emit(rows, s.unknown_names(), "projective", [den_s])
