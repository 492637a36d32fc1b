# cython: language_level=3, boundscheck=False, wraparound=False
"""Sparse multivariate polynomial kernel, compiled variant.

Mirrors _kernel_py.py function for function; keep the two in sync.  The
speedup comes from C-level loops and tuple handling; coefficients stay
arbitrary Python rationals.
"""

BACKEND = "compiled"


cpdef tuple mono_mul(tuple m1, tuple m2):
    cdef Py_ssize_t i = 0, j = 0, n1 = len(m1), n2 = len(m2)
    cdef object a1, a2
    cdef long e1, e2
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    out = []
    while i < n1 and j < n2:
        a1 = (<tuple>m1[i])[0]
        a2 = (<tuple>m2[j])[0]
        if a1 == a2:
            e1 = (<tuple>m1[i])[1]
            e2 = (<tuple>m2[j])[1]
            out.append((a1, e1 + e2))
            i += 1
            j += 1
        elif a1 < a2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


cpdef mono_div(tuple m1, tuple m2):
    """m1 / m2, or None when m2 does not divide m1."""
    cdef Py_ssize_t i = 0, j = 0, n1 = len(m1), n2 = len(m2)
    cdef object a1, a2
    cdef long e1, e2
    if n2 == 0:
        return m1
    out = []
    while j < n2:
        if i >= n1:
            return None
        a1 = (<tuple>m1[i])[0]
        a2 = (<tuple>m2[j])[0]
        if a1 < a2:
            out.append(m1[i])
            i += 1
        elif a1 == a2:
            e1 = (<tuple>m1[i])[1]
            e2 = (<tuple>m2[j])[1]
            if e1 < e2:
                return None
            if e1 > e2:
                out.append((a1, e1 - e2))
            i += 1
            j += 1
        else:
            return None
    while i < n1:
        out.append(m1[i])
        i += 1
    return tuple(out)


cpdef dict p_add(dict a, dict b):
    cdef dict out
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


cpdef dict p_sub(dict a, dict b):
    cdef dict out
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


cpdef dict p_neg(dict a):
    cdef dict out = {}
    for m, c in a.items():
        out[m] = -c
    return out


cpdef dict p_scale(dict a, c):
    cdef dict out = {}
    if not c:
        return out
    for m, k in a.items():
        out[m] = k * c
    return out


cpdef dict p_mul(dict a, dict b):
    cdef dict out = {}
    cdef list bitems
    cdef tuple m
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    bitems = list(b.items())
    for ma, ca in a.items():
        if not <tuple>ma:
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
                m = mono_mul(<tuple>ma, <tuple>mb)
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


cpdef dict p_mul_mono(dict a, tuple m, c):
    """a * (c * m) for a single monomial m and coefficient c."""
    cdef dict out = {}
    if not c:
        return out
    if not m:
        return p_scale(a, c)
    for ma, ca in a.items():
        out[mono_mul(<tuple>ma, m)] = ca * c
    return out


cpdef dict p_pow(dict a, long n):
    cdef dict result = None
    cdef dict base = a
    cdef long k = n
    if n < 0:
        raise ValueError("kernel power must be nonnegative")
    while k:
        if k & 1:
            result = dict(base) if result is None else p_mul(result, base)
        k >>= 1
        if k:
            base = p_mul(base, base)
    if result is None:
        if a:
            one = next(iter(a.values()))
            return {(): one / one}
        return {(): 1}
    return result
