"""Expression core: exact rational-normal-form expressions.

Every expression is a normalized fraction of two sparse polynomials over
interned atoms.  Equality and hashing are structural on the normalized
pair, so a successful zero test is exact; a nonzero result may still be an
unrecognized zero when common factors resist the best-effort cancellation.

Atoms:
  x, y                independent variables (y is the dependent variable of
                      the ODE, treated as an independent symbol here)
  unk(name, order)    an unknown function of x and its derivatives
  param(name)         an undetermined constant
  ln_/arctan_/exp_    opaque transcendental wrappers, argument normalized
  formal_int(g, x0)   integral of g(t) dt from x0 to x, g free of y
"""

import math
from bisect import bisect_left, insort

from . import rnf
from .errors import MissingBinding, NonFiniteResult, ZeroDenominator
from .kernel import BACKEND, p_add, p_mul, p_neg, p_scale, p_sub
from .rnf import (
    P_ONE,
    RAT,
    R_ONE,
    R_ZERO,
    atom_desc,
    frac_add,
    frac_mul,
    intern_atom,
    leading_mono,
    p_atoms,
    p_is_const,
    rnf_make,
    rnf_token,
)

__all__ = [
    "BACKEND",
    "Expr",
    "E_ZERO",
    "E_ONE",
    "const",
    "x",
    "y",
    "unk",
    "param",
    "ln_",
    "arctan_",
    "exp_",
    "formal_int",
    "eval_numeric",
    "EvalContext",
]

_RESERVED = ("x", "y")


class Expr:
    """Immutable normalized fraction of kernel polynomials."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den):
        self.num = num
        self.den = den
        self._hash = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((frozenset(self.num.items()), frozenset(self.den.items())))
            self._hash = h
        return h

    def __repr__(self):
        return f"Expr({rnf_token(self.num, self.den)})"

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_const(self):
        return p_is_const(self.num) and p_is_const(self.den)

    def const_value(self):
        if not self.is_const:
            raise ValueError("expression is not a rational constant")
        if not self.num:
            return R_ZERO
        return self.num[()] / self.den[()]

    def atoms(self):
        return p_atoms(self.num) | p_atoms(self.den)

    def unknowns(self):
        """All (name, order) pairs of unknown-function atoms, payloads included."""
        out = set()
        for aid in self.atoms():
            out |= _atom_unknowns(aid)
        return out

    def depends_on(self, var):
        return any(_atom_depends(aid, var) for aid in self.atoms())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        n, d = frac_add(self.num, self.den, other.num, other.den)
        return _make(n, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Expr(p_neg(self.num), self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return E_ZERO
        n, d = frac_mul(self.num, self.den, other.num, other.den)
        return _make(n, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDenominator("division by zero expression")
        n, d = frac_mul(self.num, self.den, other.den, other.num)
        return _make(n, d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return E_ONE
        if self.is_zero:
            if n < 0:
                raise ZeroDenominator("zero raised to a negative power")
            return E_ZERO
        if n < 0:
            inv = _make(dict(self.den), dict(self.num))
            return inv ** (-n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    # -- calculus ------------------------------------------------------------

    def diff(self, var, order=1):
        if var not in _RESERVED:
            raise ValueError(f"differentiation variable must be x or y, got {var!r}")
        e = self
        for _ in range(order):
            e = _diff1(e, var)
        return e

    # -- structure -----------------------------------------------------------

    def numerator(self):
        return Expr(dict(self.num), dict(P_ONE))

    def denominator(self):
        return Expr(dict(self.den), dict(P_ONE))

    def sign_canonical(self):
        """Negate if the numerator's leading coefficient is negative."""
        if self.is_zero:
            return self
        if self.num[leading_mono(self.num)] < 0:
            return -self
        return self

    def substitute(self, unk_map=None, atom_map=None, params=None):
        """Replace atoms by expressions.

        unk_map maps (name, base_order) to a replacement for that derivative;
        higher orders of the same name are replaced by differentiating the
        replacement, re-substituting along the way.  The replacement for a
        key must not contain the keyed atom itself.  atom_map maps atom ids
        directly; params maps parameter names to expressions or rationals.
        """
        amap = dict(atom_map) if atom_map else {}
        if params:
            for name, val in params.items():
                aid = rnf.find_atom(("param", name))
                if aid is not None:
                    amap[aid] = _coerce(val)
        ctx = _SubstCtx(unk_map or {}, amap)
        if not ctx.relevant(self):
            return self
        return ctx.apply(self)


def _make(n, d):
    n, d = rnf_make(n, d)
    return Expr(n, d)


def _coerce(v):
    if isinstance(v, Expr):
        return v
    if isinstance(v, int):
        return const(v)
    if isinstance(v, type(R_ONE)):
        return const(v)
    return NotImplemented


# ---------------------------------------------------------------------------
# Constructors


E_ZERO = Expr({}, dict(P_ONE))
E_ONE = Expr(dict(P_ONE), dict(P_ONE))


def const(c, d=None):
    c = RAT(c) if d is None else RAT(c, d)
    if not c:
        return E_ZERO
    return Expr({(): c}, dict(P_ONE))


def _atom_expr(aid):
    return Expr({((aid, 1),): R_ONE}, dict(P_ONE))


def _intern(desc, key):
    return intern_atom(desc, key)


def x():
    return _atom_expr(_intern(("var", "x"), ("x", 0, "")))


def y():
    return _atom_expr(_intern(("var", "y"), ("y", 0, "")))


def unk(name, order=0):
    if name in _RESERVED:
        raise ValueError(f"{name!r} is reserved for a variable")
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return _atom_expr(_intern(("unk", name, order), (name, -order, "")))


def param(name):
    if name in _RESERVED:
        raise ValueError(f"{name!r} is reserved for a variable")
    return _atom_expr(_intern(("param", name), (name, 0, "~c")))


def _payload_key(tag, arg, extra=""):
    token = rnf_token(arg.num, arg.den)
    if extra:
        token = f"{token}@{extra}"
    return (tag, 0, token)


def ln_(arg):
    arg = _coerce(arg)
    if arg.is_zero:
        raise ValueError("ln of zero")
    if arg == E_ONE:
        return E_ZERO
    return _atom_expr(_intern(("ln", arg), _payload_key("~ln", arg)))


def arctan_(arg):
    arg = _coerce(arg)
    if arg.is_zero:
        return E_ZERO
    return _atom_expr(_intern(("arctan", arg), _payload_key("~arctan", arg)))


def exp_(arg):
    """exp of a normalized argument; exp(-u) is stored as 1/exp(u)."""
    arg = _coerce(arg)
    if arg.is_zero:
        return E_ONE
    if arg.num[leading_mono(arg.num)] < 0:
        pos = -arg
        aid = _intern(("exp", pos), _payload_key("~exp", pos))
        return Expr(dict(P_ONE), {((aid, 1),): R_ONE})
    return _atom_expr(_intern(("exp", arg), _payload_key("~exp", arg)))


def formal_int(integrand, anchor=0):
    """Integral of integrand(t) dt from anchor to x, kept unevaluated.

    A rational content is pulled out so that scalar multiples of one
    integrand share the same atom.
    """
    g = _coerce(integrand)
    if g.is_zero:
        return E_ZERO
    if g.depends_on("y"):
        raise ValueError("formal integrand must not depend on y")
    anchor = RAT(anchor)
    content = _num_content(g.num)
    g0 = Expr(p_scale(g.num, 1 / content), dict(g.den))
    aid = _intern(("int", g0, anchor), _payload_key("~int", g0, str(anchor)))
    atom = _atom_expr(aid)
    if content == R_ONE:
        return atom
    return Expr({((aid, 1),): content}, dict(P_ONE))


def _num_content(num):
    g = 0
    l = 1
    for c in num.values():
        g = math.gcd(g, abs(int(c.numerator)))
        l = l * int(c.denominator) // math.gcd(l, int(c.denominator))
    content = RAT(g, l)
    if num[leading_mono(num)] < 0:
        content = -content
    return content


# ---------------------------------------------------------------------------
# Atom metadata caches


_DEP_CACHE = {}
_UNK_CACHE = {}


def _atom_depends(aid, var):
    got = _DEP_CACHE.get((aid, var))
    if got is not None:
        return got
    desc = atom_desc(aid)
    kind = desc[0]
    if kind == "var":
        out = desc[1] == var
    elif kind == "unk":
        out = var == "x"
    elif kind == "param":
        out = False
    elif kind == "int":
        out = var == "x"
    else:  # ln / arctan / exp
        out = desc[1].depends_on(var)
    _DEP_CACHE[(aid, var)] = out
    return out


def _atom_unknowns(aid):
    got = _UNK_CACHE.get(aid)
    if got is not None:
        return got
    desc = atom_desc(aid)
    kind = desc[0]
    if kind == "unk":
        out = frozenset({(desc[1], desc[2])})
    elif kind in ("ln", "arctan", "exp", "int"):
        out = frozenset(desc[1].unknowns())
    else:
        out = frozenset()
    _UNK_CACHE[aid] = out
    return out


# ---------------------------------------------------------------------------
# Differentiation


_ATOM_DIFF = {}
_DIFF_CACHE = {}


def _atom_diff(aid, var):
    got = _ATOM_DIFF.get((aid, var))
    if got is not None:
        return got
    desc = atom_desc(aid)
    kind = desc[0]
    if kind == "var":
        out = E_ONE if desc[1] == var else E_ZERO
    elif kind == "unk":
        out = unk(desc[1], desc[2] + 1) if var == "x" else E_ZERO
    elif kind == "param":
        out = E_ZERO
    elif kind == "ln":
        arg = desc[1]
        out = arg.diff(var) / arg
    elif kind == "arctan":
        arg = desc[1]
        out = arg.diff(var) / (E_ONE + arg * arg)
    elif kind == "exp":
        arg = desc[1]
        out = arg.diff(var) * _atom_expr(aid)
    elif kind == "int":
        out = desc[1] if var == "x" else E_ZERO
    else:  # pragma: no cover
        raise AssertionError(f"unhandled atom kind {kind}")
    _ATOM_DIFF[(aid, var)] = out
    return out


def _p_diff(p, var):
    total = E_ZERO
    for mono, c in p.items():
        for k, (aid, e) in enumerate(mono):
            d = _atom_diff(aid, var)
            if d.is_zero:
                continue
            if e == 1:
                rest = mono[:k] + mono[k + 1:]
            else:
                rest = mono[:k] + ((aid, e - 1),) + mono[k + 1:]
            coeff = c * e
            total = total + Expr({rest: coeff}, dict(P_ONE)) * d
    return total


def _diff1(e, var):
    key = (e, var)
    got = _DIFF_CACHE.get(key)
    if got is not None:
        return got
    dn = _p_diff(e.num, var)
    if p_is_const(e.den):
        out = dn / const(e.den[()])
    else:
        dd = _p_diff(e.den, var)
        den_e = Expr(dict(e.den), dict(P_ONE))
        num_e = Expr(dict(e.num), dict(P_ONE))
        out = (dn * den_e - num_e * dd) / (den_e * den_e)
    if len(_DIFF_CACHE) > 40000:
        _DIFF_CACHE.clear()
    _DIFF_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Substitution


class _SubstCtx:
    def __init__(self, unk_map, atom_map):
        self.by_name = {}
        for (name, k), repl in unk_map.items():
            cur = self.by_name.setdefault(name, {})
            cur[k] = _coerce(repl)
        self.atom_map = atom_map
        self._atom_out = {}
        self._chain = {}

    def relevant(self, e):
        for aid in e.atoms():
            if self._atom_hit(aid):
                return True
        return False

    def _atom_hit(self, aid):
        if aid in self.atom_map:
            return True
        desc = atom_desc(aid)
        kind = desc[0]
        if kind == "unk":
            base = self.by_name.get(desc[1])
            if base is not None and any(k <= desc[2] for k in base):
                return True
            return False
        if kind in ("ln", "arctan", "exp", "int"):
            return self.relevant(desc[1])
        return False

    def _derived(self, name, k):
        """Replacement for the k-th derivative of name, fully substituted."""
        got = self._chain.get((name, k))
        if got is not None:
            return got
        orders = self.by_name[name]
        if k in orders:
            out = self.apply(orders[k])
        else:
            prev = self._derived(name, k - 1)
            out = self.apply(prev.diff("x"))
        self._chain[(name, k)] = out
        return out

    def _atom_value(self, aid):
        got = self._atom_out.get(aid)
        if got is not None:
            return got
        if aid in self.atom_map:
            out = self.atom_map[aid]
        else:
            desc = atom_desc(aid)
            kind = desc[0]
            if kind == "unk":
                name, k = desc[1], desc[2]
                base = self.by_name.get(name)
                if base is not None and any(j <= k for j in base):
                    out = self._derived(name, k)
                else:
                    out = _atom_expr(aid)
            elif kind == "ln":
                out = ln_(self.apply(desc[1]))
            elif kind == "arctan":
                out = arctan_(self.apply(desc[1]))
            elif kind == "exp":
                out = exp_(self.apply(desc[1]))
            elif kind == "int":
                out = formal_int(self.apply(desc[1]), desc[2])
            else:
                out = _atom_expr(aid)
        self._atom_out[aid] = out
        return out

    def _apply_poly(self, p):
        total = E_ZERO
        for mono, c in p.items():
            static = []
            dynamic = []
            for aid, e in mono:
                if self._atom_hit(aid):
                    dynamic.append((aid, e))
                else:
                    static.append((aid, e))
            term = Expr({tuple(static): c}, dict(P_ONE))
            for aid, e in dynamic:
                term = term * self._atom_value(aid) ** e
            total = total + term
        return total

    def apply(self, e):
        if not self.relevant(e):
            return e
        num = self._apply_poly(e.num)
        if p_is_const(e.den):
            return num / const(e.den[()])
        return num / self._apply_poly(e.den)


# ---------------------------------------------------------------------------
# Numeric evaluation


class IntegralCache:
    """Per-atom cache of accumulated integral values, keyed by base point."""

    def __init__(self):
        self._points = {}

    def nearest(self, aid, x0):
        pts = self._points.get(aid)
        if not pts:
            return None
        i = bisect_left(pts, (x0,))
        best = None
        for j in (i - 1, i):
            if 0 <= j < len(pts):
                if best is None or abs(pts[j][0] - x0) < abs(best[0] - x0):
                    best = pts[j]
        return best

    def store(self, aid, x0, val):
        pts = self._points.setdefault(aid, [])
        insort(pts, (x0, val))
        if len(pts) > 4096:
            del pts[::2]


class EvalContext:
    def __init__(self):
        self.integrals = IntegralCache()


def eval_numeric(e, x0, bindings=None, y=None, ctx=None):
    """Evaluate an expression at x = x0 as a float.

    bindings maps unknown-function names to callables(x, order) -> float,
    to expressions in x, or to plain numbers; parameter names map to
    numbers.  y supplies the value of the y variable when the expression
    uses it.  Formal integrals are evaluated by adaptive quadrature, with
    ctx (an EvalContext) caching partial integrals across calls.
    """
    e = _coerce(e)
    bindings = bindings or {}
    if y is None and "y" in bindings:
        y = bindings["y"]
    cache = {}
    nv = _eval_poly(e.num, x0, bindings, y, ctx, cache)
    dv = _eval_poly(e.den, x0, bindings, y, ctx, cache)
    if dv == 0.0:
        raise NonFiniteResult(f"denominator vanished at x={x0}")
    out = nv / dv
    if not math.isfinite(out):
        raise NonFiniteResult(f"non-finite value at x={x0}")
    return out


def _eval_poly(p, x0, bindings, y, ctx, cache):
    total = 0.0
    for mono, c in p.items():
        v = float(c)
        for aid, e in mono:
            v *= _eval_atom(aid, x0, bindings, y, ctx, cache) ** e
        total += v
    if not math.isfinite(total):
        raise NonFiniteResult(f"non-finite polynomial value at x={x0}")
    return total


def _binding_value(name, b, x0, order, bindings, ctx):
    if isinstance(b, Expr):
        return eval_numeric(b.diff("x", order) if order else b, x0, bindings, ctx=ctx)
    if callable(b):
        return float(b(x0, order))
    if order:
        return 0.0
    return float(b)


def _eval_atom(aid, x0, bindings, y, ctx, cache):
    got = cache.get(aid)
    if got is not None:
        return got
    desc = atom_desc(aid)
    kind = desc[0]
    if kind == "var":
        if desc[1] == "x":
            out = float(x0)
        else:
            if y is None:
                raise MissingBinding("y")
            out = float(y)
    elif kind == "unk":
        name = desc[1]
        if name not in bindings:
            raise MissingBinding(name)
        out = _binding_value(name, bindings[name], x0, desc[2], bindings, ctx)
    elif kind == "param":
        name = desc[1]
        if name not in bindings:
            raise MissingBinding(name)
        out = _binding_value(name, bindings[name], x0, 0, bindings, ctx)
    elif kind == "ln":
        v = eval_numeric(desc[1], x0, bindings, y=y, ctx=ctx)
        if v <= 0.0:
            raise NonFiniteResult(f"ln of non-positive value {v} at x={x0}")
        out = math.log(v)
    elif kind == "arctan":
        out = math.atan(eval_numeric(desc[1], x0, bindings, y=y, ctx=ctx))
    elif kind == "exp":
        v = eval_numeric(desc[1], x0, bindings, y=y, ctx=ctx)
        try:
            out = math.exp(v)
        except OverflowError:
            raise NonFiniteResult(f"exp overflow at x={x0}") from None
    elif kind == "int":
        out = _eval_integral(aid, desc[1], desc[2], x0, bindings, ctx)
    else:  # pragma: no cover
        raise AssertionError(f"unhandled atom kind {kind}")
    if not math.isfinite(out):
        raise NonFiniteResult(f"non-finite atom value at x={x0}")
    cache[aid] = out
    return out


def _eval_integral(aid, g, anchor, x0, bindings, ctx):
    from scipy.integrate import quad

    def f(t):
        return eval_numeric(g, t, bindings, ctx=ctx)

    base_x = float(anchor)
    base_v = 0.0
    if ctx is not None:
        near = ctx.integrals.nearest(aid, x0)
        if near is not None:
            base_x, base_v = near
    if base_x == x0:
        return base_v
    val, _err = quad(f, base_x, x0, epsabs=1e-12, epsrel=1e-10, limit=200)
    out = base_v + val
    if ctx is not None and math.isfinite(out):
        ctx.integrals.store(aid, x0, out)
    return out
