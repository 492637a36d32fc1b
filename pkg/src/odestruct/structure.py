"""Solution-structure ansatz: zeta assembly, induced f, degree bounds.

A structure is zeta = p1/q1 + alpha*ln(p2/q2) + beta*arctan(p3/q3) with the
pi, qi polynomial in y over x-dependent coefficients.  Differentiating
zeta(x, y) = c implicitly gives dy/dx = -zeta_x/zeta_y, which is rational
in y because the log and arctan derivatives clear their transcendental
wrappers.  The common denominator is assembled syntactically, so no
cancellation is needed for correctness.
"""

import random
from dataclasses import dataclass

from .errors import DegenerateStructure, ExhaustedRetries, ParseError
from .expr import E_ONE, E_ZERO, arctan_, const, ln_, unk, x
from .poly import PolyY, RatY
from .rnf import RAT

__all__ = [
    "DegreeProfile",
    "Structure",
    "build_zeta",
    "build_f",
    "degree_bounds",
    "random_instance",
    "generic_structure",
    "riccati_structure",
    "abelA_structure",
    "uc_structure",
    "parse_profile",
    "profile_of",
]


@dataclass(frozen=True)
class DegreeProfile:
    n_p1: int = 0
    n_q1: int = 0
    n_p2: int = 0
    n_q2: int = 0
    n_p3: int = 0
    n_q3: int = 0
    log_present: bool = False
    arctan_present: bool = False

    def __post_init__(self):
        degs = (self.n_p1, self.n_q1, self.n_p2, self.n_q2, self.n_p3, self.n_q3)
        if any(d < 0 for d in degs):
            raise ValueError("degrees must be nonnegative")
        if not self.log_present and (self.n_p2 or self.n_q2):
            raise ValueError("log degrees given without log part")
        if not self.arctan_present and (self.n_p3 or self.n_q3):
            raise ValueError("arctan degrees given without arctan part")

    @property
    def N(self):
        return (self.n_p1 + self.n_q1 + self.n_p2 + self.n_q2
                + self.n_p3 + self.n_q3)


def degree_bounds(d):
    """Worst-case y-degrees of f's numerator/denominator and parameter counts."""
    n = d.N
    candidates = (
        n + d.n_q1 + d.n_q3 - d.n_p1 - d.n_p3,
        n + d.n_q1 - d.n_q3 - d.n_p1 + d.n_p3,
        n + d.n_q3 - d.n_p3,
        n - d.n_q3 + d.n_p3,
        n + d.n_q1 - d.n_p1,
    )
    n_p_max = max(candidates)
    total = n + 2
    if d.log_present:
        total += 2
    if d.arctan_present:
        total += 2
    return n_p_max, n_p_max - 1, total, n + 1


class Structure:
    """The ansatz's component polynomials plus the alpha/beta constants."""

    __slots__ = ("p1", "q1", "p2", "q2", "p3", "q3", "alpha", "beta")

    def __init__(self, p1, q1, p2=None, q2=None, p3=None, q3=None,
                 alpha=E_ONE, beta=E_ONE):
        self.p1 = _poly(p1)
        self.q1 = _poly(q1)
        if (p2 is None) != (q2 is None):
            raise ValueError("p2 and q2 must be given together")
        if (p3 is None) != (q3 is None):
            raise ValueError("p3 and q3 must be given together")
        self.p2 = _poly(p2) if p2 is not None else None
        self.q2 = _poly(q2) if q2 is not None else None
        self.p3 = _poly(p3) if p3 is not None else None
        self.q3 = _poly(q3) if q3 is not None else None
        self.alpha = alpha
        self.beta = beta
        if self.q1.is_zero:
            raise DegenerateStructure("q1 is the zero polynomial")
        if self.log_present and (self.p2.is_zero or self.q2.is_zero):
            raise DegenerateStructure("log part has a zero polynomial")
        if self.arctan_present and self.q3.is_zero:
            raise DegenerateStructure("arctan part has zero q3")

    @property
    def log_present(self):
        return self.p2 is not None

    @property
    def arctan_present(self):
        return self.p3 is not None

    def unknown_names(self):
        names = set()
        for p in (self.p1, self.q1, self.p2, self.q2, self.p3, self.q3):
            if p is None:
                continue
            for c in p.coeffs:
                names |= {n for n, _ in c.unknowns()}
        return sorted(names)

    def map_coeffs(self, fn):
        """New structure with fn applied to every coefficient expression."""
        def conv(p):
            if p is None:
                return None
            return PolyY([fn(c) for c in p.coeffs])

        return Structure(conv(self.p1), conv(self.q1), conv(self.p2),
                         conv(self.q2), conv(self.p3), conv(self.q3),
                         self.alpha, self.beta)


def _poly(p):
    if p is None or isinstance(p, PolyY):
        return p
    return PolyY(p)


def profile_of(s):
    return DegreeProfile(
        n_p1=max(s.p1.degree, 0),
        n_q1=max(s.q1.degree, 0),
        n_p2=max(s.p2.degree, 0) if s.log_present else 0,
        n_q2=max(s.q2.degree, 0) if s.log_present else 0,
        n_p3=max(s.p3.degree, 0) if s.arctan_present else 0,
        n_q3=max(s.q3.degree, 0) if s.arctan_present else 0,
        log_present=s.log_present,
        arctan_present=s.arctan_present,
    )


def build_zeta(s):
    zeta = s.p1.to_expr() / s.q1.to_expr()
    if s.log_present:
        zeta = zeta + s.alpha * ln_(s.p2.to_expr() / s.q2.to_expr())
    if s.arctan_present:
        zeta = zeta + s.beta * arctan_(s.p3.to_expr() / s.q3.to_expr())
    return zeta


def _wronskian(p, q, var):
    dp = p.diff_x() if var == "x" else p.diff_y()
    dq = q.diff_x() if var == "x" else q.diff_y()
    return dp * q - p * dq


def _cleared_derivative(s, var):
    """Numerator of zeta_v over the common denominator q1^2*(p2 q2)*(q3^2+p3^2)."""
    log_block = s.p2 * s.q2 if s.log_present else None
    arc_block = s.q3 * s.q3 + s.p3 * s.p3 if s.arctan_present else None
    q1sq = s.q1 * s.q1

    total = _wronskian(s.p1, s.q1, var)
    if log_block is not None:
        total = total * log_block
    if arc_block is not None:
        total = total * arc_block

    if s.log_present:
        t2 = _wronskian(s.p2, s.q2, var).scale(s.alpha) * q1sq
        if arc_block is not None:
            t2 = t2 * arc_block
        total = total + t2
    if s.arctan_present:
        t3 = _wronskian(s.p3, s.q3, var).scale(s.beta) * q1sq
        if log_block is not None:
            t3 = t3 * log_block
        total = total + t3
    return total


def build_f(s):
    """Induced right-hand side f = -zeta_x/zeta_y as a rational function of y."""
    ny = _cleared_derivative(s, "y")
    if ny.is_zero:
        raise DegenerateStructure("zeta does not depend on y")
    nx = _cleared_derivative(s, "x")
    return RatY.build(-nx, ny)


# ---------------------------------------------------------------------------
# Named structures


def riccati_structure():
    """(a1*y + a0)/(b1*y + b0) with unknown coefficient functions."""
    return Structure(p1=[unk("a0"), unk("a1")], q1=[unk("b0"), unk("b1")])


def abelA_structure():
    """a1*y + b1 + ln(a2*y + b2) with unknown coefficient functions."""
    return Structure(p1=[unk("b1"), unk("a1")], q1=[E_ONE],
                     p2=[unk("b2"), unk("a2")], q2=[E_ONE])


def uc_structure():
    """(a2*y^2 + a1*y + a0)/(b2*y^2 + b1*y + b0), the unclassified family."""
    return Structure(p1=[unk("a0"), unk("a1"), unk("a2")],
                     q1=[unk("b0"), unk("b1"), unk("b2")])


_PART_NAMES = {"rational": ("a", "b"), "log": ("c", "d"), "arctan": ("g", "h")}


def generic_structure(profile):
    """Structure with fresh unknowns named a/b (rational), c/d (log), g/h (arctan)."""
    def coeffs(prefix, deg):
        return [unk(f"{prefix}{k}") for k in range(deg + 1)]

    kw = {}
    if profile.log_present:
        kw["p2"] = coeffs("c", profile.n_p2)
        kw["q2"] = coeffs("d", profile.n_q2)
    if profile.arctan_present:
        kw["p3"] = coeffs("g", profile.n_p3)
        kw["q3"] = coeffs("h", profile.n_q3)
    return Structure(p1=coeffs("a", profile.n_p1), q1=coeffs("b", profile.n_q1), **kw)


def parse_profile(text):
    """Parse 'rational:1,1+log:1,0+arctan:0,0' into a DegreeProfile."""
    fields = {}
    for part in text.split("+"):
        part = part.strip()
        if ":" not in part:
            raise ParseError(0, f"profile part {part!r} lacks ':'")
        name, _, degs = part.partition(":")
        name = name.strip()
        if name not in _PART_NAMES:
            raise ParseError(0, f"unknown profile part {name!r}")
        if name in fields:
            raise ParseError(0, f"duplicate profile part {name!r}")
        nums = degs.split(",")
        if len(nums) != 2:
            raise ParseError(0, f"part {name!r} needs two degrees")
        try:
            fields[name] = (int(nums[0]), int(nums[1]))
        except ValueError:
            raise ParseError(0, f"bad degree in part {name!r}") from None
    if "rational" not in fields:
        raise ParseError(0, "profile must include a rational part")
    np1, nq1 = fields["rational"]
    np2, nq2 = fields.get("log", (0, 0))
    np3, nq3 = fields.get("arctan", (0, 0))
    return DegreeProfile(np1, nq1, np2, nq2, np3, nq3,
                         log_present="log" in fields,
                         arctan_present="arctan" in fields)


# ---------------------------------------------------------------------------
# Random concrete instances (test generator)


def random_instance(s, seed, coeff_degree=1, max_tries=200):
    """Replace unknown coefficients by random small integer polynomials in x.

    Re-rolls until the instance is nondegenerate: component denominators
    stay nonzero, build_f succeeds, and f's denominator does not vanish at
    the sample points used by the generator's contract.
    """
    rng = random.Random(seed)
    names = s.unknown_names()
    xe = x()

    def rand_poly():
        return sum((const(rng.randint(-3, 3)) * xe ** k
                    for k in range(coeff_degree + 1)), E_ZERO)

    for _ in range(max_tries):
        repl = {(n, 0): rand_poly() for n in names}
        try:
            inst = s.map_coeffs(lambda c: c.substitute(unk_map=repl))
            f = build_f(inst)
        except DegenerateStructure:
            continue
        den = f.den.to_expr()
        if any(_vanishes_at(den, xv, RAT(1, 7)) for xv in (RAT(0), RAT(1, 3))):
            continue
        return inst
    raise ExhaustedRetries(f"no valid instance after {max_tries} tries")


def _vanishes_at(e, xv, yv):
    val = subs_xy(e, xv, yv)
    return val.is_zero


def subs_xy(e, xv=None, yv=None):
    """Exact substitution of rational values for the variables."""
    amap = {}
    if xv is not None:
        aid = _var_aid("x")
        if aid is not None:
            amap[aid] = const(xv)
    if yv is not None:
        aid = _var_aid("y")
        if aid is not None:
            amap[aid] = const(yv)
    if not amap:
        return e
    return e.substitute(atom_map=amap)


def _var_aid(name):
    from .rnf import find_atom

    return find_atom(("var", name))
