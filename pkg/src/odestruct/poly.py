"""Polynomials and rational functions in y with expression coefficients."""

from .errors import DivisionInexact, NotPolynomialInY, ZeroDenominator
from .expr import E_ONE, E_ZERO, Expr, _atom_depends, _coerce, y
from .rnf import P_ONE, p_collect

__all__ = ["PolyY", "RatY", "OdeSpec"]


def _y_aid():
    e = y()
    return next(iter(e.num))[0][0]


class PolyY:
    """Dense polynomial in y, coefficients lowest power first, trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_co(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basics --------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def trim(self):
        return self  # construction already trims; kept for API symmetry

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return E_ZERO

    def __eq__(self, other):
        if not isinstance(other, PolyY):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyY({list(self.coeffs)!r})"

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        other = _po(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyY([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        other = _po(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyY([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self):
        return PolyY([-c for c in self.coeffs])

    def __mul__(self, other):
        other = _po(other)
        if self.is_zero or other.is_zero:
            return PolyY()
        out = [E_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyY(out)

    def scale(self, c):
        c = _co(c)
        return PolyY([a * c for a in self.coeffs])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("PolyY power must be a nonnegative integer")
        out = PolyY([E_ONE])
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ----------------------------------------------------------------

    def diff_x(self):
        return PolyY([c.diff("x") for c in self.coeffs])

    def diff_y(self):
        return PolyY([k * c for k, c in enumerate(self.coeffs)][1:])

    # -- division -----------------------------------------------------------------

    def divexact(self, other):
        """Quotient self/other; DivisionInexact if the remainder is nonzero."""
        other = _po(other)
        if other.is_zero:
            raise ZeroDenominator("PolyY division by zero polynomial")
        if self.is_zero:
            return PolyY()
        if self.degree < other.degree:
            raise DivisionInexact("degree of dividend below divisor")
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        q = [E_ZERO] * (len(rem) - len(other.coeffs) + 1)
        for top in range(len(rem) - 1, len(other.coeffs) - 2, -1):
            c = rem[top]
            if c.is_zero:
                continue
            k = top - (len(other.coeffs) - 1)
            factor = c / lead
            q[k] = factor
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * b
        if any(not c.is_zero for c in rem):
            raise DivisionInexact("nonzero remainder")
        return PolyY(q)

    # -- conversions -----------------------------------------------------------------

    def to_expr(self):
        yv = y()
        out = E_ZERO
        for k in range(len(self.coeffs) - 1, -1, -1):
            out = out * yv + self.coeffs[k]
        return out

    def eval_y(self, v):
        v = _co(v)
        out = E_ZERO
        for k in range(len(self.coeffs) - 1, -1, -1):
            out = out * v + self.coeffs[k]
        return out

    @classmethod
    def from_expr(cls, e):
        """Collect an expression polynomial in y into coefficients.

        The denominator must be free of y; y hidden inside a transcendental
        atom is rejected.
        """
        e = _co(e)
        if Expr(dict(e.den), dict(P_ONE)).depends_on("y"):
            raise NotPolynomialInY("denominator depends on y")
        aid = _y_aid()
        den = Expr(dict(e.den), dict(P_ONE))
        buckets = p_collect(e.num, aid)
        deg = max(buckets) if buckets else 0
        coeffs = [E_ZERO] * (deg + 1)
        for k, bucket in buckets.items():
            for mono in bucket:
                for a, _ in mono:
                    if _atom_depends(a, "y"):
                        raise NotPolynomialInY(
                            "y occurs inside a transcendental atom")
            coeffs[k] = Expr(bucket, dict(P_ONE)) / den
        return cls(coeffs)


def _co(v):
    e = _coerce(v)
    if e is NotImplemented:
        raise TypeError(f"cannot use {type(v).__name__} as a coefficient")
    return e


def _po(v):
    if isinstance(v, PolyY):
        return v
    return PolyY([_co(v)])


class RatY:
    """Rational function of y: a pair of PolyY with nonzero denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = _po(num)
        den = _po(den)
        if den.is_zero:
            raise ZeroDenominator("RatY denominator is the zero polynomial")
        self.num = num
        self.den = den

    @classmethod
    def build(cls, num, den):
        """Normalize num/den jointly, then re-split into y-polynomials."""
        num_e = num.to_expr() if isinstance(num, PolyY) else _co(num)
        den_e = den.to_expr() if isinstance(den, PolyY) else _co(den)
        if den_e.is_zero:
            raise ZeroDenominator("RatY denominator normalizes to zero")
        f = num_e / den_e
        return cls(PolyY.from_expr(f.numerator()),
                   PolyY.from_expr(f.denominator()))

    def to_expr(self):
        return self.num.to_expr() / self.den.to_expr()

    def __eq__(self, other):
        if not isinstance(other, RatY):
            return NotImplemented
        lhs = self.num.to_expr() * other.den.to_expr()
        rhs = other.num.to_expr() * self.den.to_expr()
        return (lhs - rhs).is_zero

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatY(num={self.num!r}, den={self.den!r})"


class OdeSpec:
    """A first-order ODE dy/dx = f(x, y) with f rational in y.

    Numerator coefficients are viewed as X0, X1, ... and denominator
    coefficients as Y0, Y1, ... following the worked families.
    """

    __slots__ = ("f",)

    def __init__(self, f):
        if not isinstance(f, RatY):
            raise TypeError("OdeSpec requires a RatY")
        self.f = f

    @classmethod
    def from_expr(cls, e):
        return cls(RatY.build(_co(e), E_ONE))

    def X(self, k):
        return self.f.num.coeff(k)

    def Y(self, k):
        return self.f.den.coeff(k)

    def coefficients(self):
        out = {}
        for k in range(self.f.num.degree + 1):
            out[f"X{k}"] = self.f.num.coeff(k)
        for k in range(self.f.den.degree + 1):
            out[f"Y{k}"] = self.f.den.coeff(k)
        return out

    def __repr__(self):
        return f"OdeSpec({self.f!r})"
