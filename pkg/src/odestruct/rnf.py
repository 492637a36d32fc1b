"""Rational normal form plumbing: atoms, monomial order, canonicalization.

Expressions normalize to a pair of kernel polynomials (num, den) over
interned atoms.  Atoms are the independent variables x and y, unknown
functions with a derivative order, undetermined constants, and opaque
transcendental wrappers (ln, arctan, exp, formal integrals) whose payloads
are themselves normalized expressions.

The free scalar of a fraction is fixed by making the denominator's
coefficients integer with coprime content and the coefficient of the
structurally leading monomial positive.  Structural order of atoms:
lexicographically smaller name is more significant; within one name a
higher derivative order is more significant.
"""

import math
from functools import cmp_to_key

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    from fractions import Fraction as RAT

from .errors import ZeroDenominator
from .kernel import mono_div, mono_mul, p_add, p_mul, p_mul_mono, p_scale, p_sub

R_ZERO = RAT(0)
R_ONE = RAT(1)

# The constant-one polynomial; shared, never mutated.
P_ONE = {(): R_ONE}


def rat(n, d=1):
    return RAT(n, d)


def is_rat(c):
    return isinstance(c, type(R_ONE)) or isinstance(c, int)


# --------------------------------------------------------------------------
# Atom table


_IDS = {}
_DESC = []
_KEY = []


def intern_atom(desc, key):
    """Intern an atom descriptor with its structural priority key."""
    aid = _IDS.get(desc)
    if aid is None:
        aid = len(_DESC)
        _IDS[desc] = aid
        _DESC.append(desc)
        _KEY.append(key)
    return aid


def atom_desc(aid):
    return _DESC[aid]


def atom_key(aid):
    return _KEY[aid]


def find_atom(desc):
    return _IDS.get(desc)


# --------------------------------------------------------------------------
# Structural monomial order (lex; smaller priority key = more significant)


def _mono_keyed(mono):
    return sorted((_KEY[aid], e) for aid, e in mono)


def mono_cmp(m1, m2):
    """Lex comparison: higher exponent on the most significant atom wins."""
    if m1 == m2:
        return 0
    k1 = _mono_keyed(m1)
    k2 = _mono_keyed(m2)
    i = 0
    j = 0
    while i < len(k1) or j < len(k2):
        key1 = k1[i][0] if i < len(k1) else None
        key2 = k2[j][0] if j < len(k2) else None
        if key2 is None or (key1 is not None and key1 < key2):
            return 1  # m1 has a positive exponent where m2 has zero
        if key1 is None or key2 < key1:
            return -1
        e1 = k1[i][1]
        e2 = k2[j][1]
        if e1 != e2:
            return 1 if e1 > e2 else -1
        i += 1
        j += 1
    return 0


_MONO_SORT_KEY = cmp_to_key(mono_cmp)


def leading_mono(p):
    it = iter(p)
    lead = next(it)
    for m in it:
        if mono_cmp(m, lead) > 0:
            lead = m
    return lead


def sorted_monos(p, reverse=True):
    return sorted(p, key=_MONO_SORT_KEY, reverse=reverse)


# --------------------------------------------------------------------------
# Polynomial queries


def p_atoms(p):
    out = set()
    for m in p:
        for aid, _ in m:
            out.add(aid)
    return out


def p_degree_in(p, aid):
    deg = 0
    for m in p:
        for a, e in m:
            if a == aid and e > deg:
                deg = e
    return deg


def p_collect(p, aid):
    """Group terms by the exponent of one atom: {exp: polynomial without it}."""
    out = {}
    for m, c in p.items():
        e = 0
        rest = m
        for k, (a, ee) in enumerate(m):
            if a == aid:
                e = ee
                rest = m[:k] + m[k + 1:]
                break
        bucket = out.setdefault(e, {})
        acc = bucket.get(rest)
        if acc is None:
            bucket[rest] = c
        else:
            acc = acc + c
            if acc:
                bucket[rest] = acc
            else:
                del bucket[rest]
    return {e: b for e, b in out.items() if b}


def p_is_const(p):
    return not p or (len(p) == 1 and () in p)


def p_const_value(p):
    if not p:
        return R_ZERO
    return p[()]


# --------------------------------------------------------------------------
# Exact division and gcd helpers


def p_divexact(a, b):
    """Quotient a/b when the division is exact, else None."""
    if not b:
        raise ZeroDenominator("polynomial division by zero")
    if not a:
        return {}
    if p_is_const(b):
        cb = b[()]
        return {m: c / cb for m, c in a.items()}
    lb = leading_mono(b)
    cb = b[lb]
    q = {}
    r = dict(a)
    while r:
        lr = leading_mono(r)
        md = mono_div(lr, lb)
        if md is None:
            return None
        cq = r[lr] / cb
        q[md] = cq
        r = p_sub(r, p_mul_mono(b, md, cq))
    return q


def _mono_gcd(m1, m2):
    out = []
    i = 0
    j = 0
    while i < len(m1) and j < len(m2):
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1 == a2:
            out.append((a1, min(e1, e2)))
            i += 1
            j += 1
        elif a1 < a2:
            i += 1
        else:
            j += 1
    return tuple(out)


def _content_mono(p):
    it = iter(p)
    g = next(it)
    for m in it:
        if not g:
            return ()
        g = _mono_gcd(g, m)
    return g


def _strip_mono(p, g):
    if not g:
        return p
    return {mono_div(m, g): c for m, c in p.items()}


def _to_unilist(p, aid):
    deg = p_degree_in(p, aid)
    out = [R_ZERO] * (deg + 1)
    for m, c in p.items():
        if not m:
            out[0] = out[0] + c
        else:
            a, e = m[0]
            if a != aid or len(m) != 1:
                return None
            out[e] = out[e] + c
    while out and not out[-1]:
        out.pop()
    return out


def _uni_rem(u, v):
    """Remainder of u by v over the rationals (v nonempty)."""
    u = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(u) - 1 >= dv and u:
        du = len(u) - 1
        c = u[-1] / lv
        for k in range(dv + 1):
            u[du - dv + k] = u[du - dv + k] - c * v[k]
        while u and not u[-1]:
            u.pop()
    return u


def _uni_primitive(u):
    nums = [abs(int(c.numerator)) for c in u if c]
    dens = [int(c.denominator) for c in u if c]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    l = 1
    for d in dens:
        l = l * d // math.gcd(l, d)
    factor = RAT(g, l)
    if u[-1] < 0:
        factor = -factor
    return [c / factor for c in u]


def _uni_gcd(u, v):
    a = [c for c in u]
    b = [c for c in v]
    while b:
        a, b = b, _uni_rem(a, b)
    return _uni_primitive(a)


def _from_unilist(u, aid):
    out = {}
    for e, c in enumerate(u):
        if c:
            out[(() if e == 0 else ((aid, e),))] = c
    return out


def _cancel(num, den):
    """Best-effort common-factor removal; failure to cancel is acceptable."""
    if p_is_const(den) or not num:
        return num, den
    g = _mono_gcd(_content_mono(num), _content_mono(den))
    if g:
        num = _strip_mono(num, g)
        den = _strip_mono(den, g)
        if p_is_const(den):
            return num, den
    atoms = p_atoms(num) | p_atoms(den)
    if len(atoms) == 1:
        aid = next(iter(atoms))
        un = _to_unilist(num, aid)
        ud = _to_unilist(den, aid)
        if un is not None and ud is not None:
            g1 = _uni_gcd(un, ud)
            if len(g1) > 1:
                gp = _from_unilist(g1, aid)
                num = p_divexact(num, gp)
                den = p_divexact(den, gp)
        return num, den
    q = p_divexact(num, den)
    if q is not None:
        return q, dict(P_ONE)
    q = p_divexact(den, num)
    if q is not None:
        return dict(P_ONE), q
    return num, den


def _scale_canonical(num, den):
    """Make den integer, coprime content, leading coefficient positive."""
    g = 0
    l = 1
    for c in den.values():
        g = math.gcd(g, abs(int(c.numerator)))
        l = l * int(c.denominator) // math.gcd(l, int(c.denominator))
    factor = RAT(g, l)
    if den[leading_mono(den)] < 0:
        factor = -factor
    if factor != 1:
        inv = 1 / factor
        num = p_scale(num, inv)
        den = p_scale(den, inv)
    return num, den


def rnf_make(num, den):
    """Canonicalize a raw (num, den) pair; den must not be zero."""
    if not den:
        raise ZeroDenominator("denominator normalizes to zero")
    if not num:
        return {}, dict(P_ONE)
    num, den = _cancel(num, den)
    num, den = _scale_canonical(num, den)
    return num, den


# --------------------------------------------------------------------------
# Raw fraction arithmetic (canonicalized by the caller via rnf_make)


def frac_add(n1, d1, n2, d2):
    if d1 == d2:
        return p_add(n1, n2), d1
    return p_add(p_mul(n1, d2), p_mul(n2, d1)), p_mul(d1, d2)


def frac_mul(n1, d1, n2, d2):
    return p_mul(n1, n2), p_mul(d1, d2)


# --------------------------------------------------------------------------
# Deterministic structural token (used for transcendental atom ordering)


def mono_token(mono):
    if not mono:
        return "1"
    parts = []
    for key, e in _mono_keyed(mono):
        name, order, payload = key
        tag = name if not payload else f"{name}[{payload}]"
        if order:
            tag = f"{tag}'{-order}"
        parts.append(tag if e == 1 else f"{tag}^{e}")
    return "*".join(parts)


def poly_token(p):
    if not p:
        return "0"
    terms = []
    for m in sorted_monos(p):
        terms.append(f"{p[m]}|{mono_token(m)}")
    return "+".join(terms)


def rnf_token(num, den):
    if den == P_ONE or p_is_const(den) and den.get((), None) == R_ONE:
        return poly_token(num)
    return f"({poly_token(num)})/({poly_token(den)})"
