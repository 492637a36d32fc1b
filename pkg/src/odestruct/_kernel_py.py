"""Sparse multivariate polynomial kernel, pure Python reference.

A polynomial is a dict mapping monomials to nonzero rational coefficients.
A monomial is a tuple of (atom_id, exponent) pairs sorted by atom_id with
every exponent positive; the empty tuple is the constant monomial.  The
compiled kernel in _kernel_cy.pyx mirrors this module function for function;
keep the two in sync.
"""

BACKEND = "pure"


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = 0
    j = 0
    n1 = len(m1)
    n2 = len(m2)
    while i < n1 and j < n2:
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1 == a2:
            out.append((a1, e1 + e2))
            i += 1
            j += 1
        elif a1 < a2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    if i < n1:
        out.extend(m1[i:])
    if j < n2:
        out.extend(m2[j:])
    return tuple(out)


def mono_div(m1, m2):
    """m1 / m2, or None when m2 does not divide m1."""
    if not m2:
        return m1
    out = []
    i = 0
    j = 0
    n1 = len(m1)
    n2 = len(m2)
    while j < n2:
        if i >= n1:
            return None
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1 < a2:
            out.append(m1[i])
            i += 1
        elif a1 == a2:
            if e1 < e2:
                return None
            if e1 > e2:
                out.append((a1, e1 - e2))
            i += 1
            j += 1
        else:
            return None
    if i < n1:
        out.extend(m1[i:])
    return tuple(out)


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for m, c in b.items():
        acc = out.get(m)
        if acc is None:
            out[m] = c
        else:
            acc = acc + c
            if acc:
                out[m] = acc
            else:
                del out[m]
    return out


def p_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for m, c in b.items():
        acc = out.get(m)
        if acc is None:
            out[m] = -c
        else:
            acc = acc - c
            if acc:
                out[m] = acc
            else:
                del out[m]
    return out


def p_neg(a):
    return {m: -c for m, c in a.items()}


def p_scale(a, c):
    if not c:
        return {}
    return {m: k * c for m, k in a.items()}


def p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    bitems = list(b.items())
    for ma, ca in a.items():
        if not ma:
            for mb, cb in bitems:
                acc = out.get(mb)
                if acc is None:
                    out[mb] = ca * cb
                else:
                    acc = acc + ca * cb
                    if acc:
                        out[mb] = acc
                    else:
                        del out[mb]
        else:
            for mb, cb in bitems:
                m = mono_mul(ma, mb)
                acc = out.get(m)
                if acc is None:
                    out[m] = ca * cb
                else:
                    acc = acc + ca * cb
                    if acc:
                        out[m] = acc
                    else:
                        del out[m]
    return out


def p_mul_mono(a, m, c):
    """a * (c * m) for a single monomial m and coefficient c."""
    if not c:
        return {}
    if not m:
        return p_scale(a, c)
    return {mono_mul(ma, m): ca * c for ma, ca in a.items()}


def p_pow(a, n):
    if n < 0:
        raise ValueError("kernel power must be nonnegative")
    result = None
    base = a
    k = n
    while k:
        if k & 1:
            result = dict(base) if result is None else p_mul(result, base)
        k >>= 1
        if k:
            base = p_mul(base, base)
    if result is None:
        one = next(iter(a.values())) if a else None
        if one is not None:
            return {(): one / one}
        return {(): 1}
    return result
