"""Text grammar for expressions: parser and canonical printer.

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := ('+'|'-') unary | power
    power   := primary ('^' ('-')? INT)?
    primary := INT | NAME | call | '(' expr ')'
    call    := 'diff' '(' NAME ',' 'x' (',' INT)? ')'
             | 'ln' '(' expr ')' | 'arctan' '(' expr ')' | 'exp' '(' expr ')'
             | 'int' '(' expr ',' 'x' (',' expr)? ')'

No implicit multiplication.  x and y are the variables; every other bare
name is an unknown function of x.  int(g, x, x0) is the integral of g(t)
from x0 to x; the anchor must be a rational constant and defaults to 0.

to_text(parse_expr(s)) is canonical, and parse_expr(to_text(e)) == e for
every expression built from the grammar.  Parameter atoms (internal to the
ansatz solver) print as bare names and reparse as unknown functions, so
they are substituted away before anything user-facing is printed.
"""

import re

from . import rnf
from .errors import ParseError
from .expr import Expr, arctan_, const, exp_, formal_int, ln_, unk, x, y
from .rnf import RAT, atom_desc, atom_key, p_is_const, sorted_monos

__all__ = ["parse_expr", "pretty_text", "to_text", "ParseError"]

_TOKEN = re.compile(r"[0-9]+|[A-Za-z_][A-Za-z0-9_]*|[-+*/^(),]")
_WS = re.compile(r"\s*")

_FUNCS = ("diff", "ln", "arctan", "exp", "int")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        pos = _WS.match(text, pos).end()
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        toks.append((m.group(), pos))
        pos = m.end()
    toks.append(("", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        got, pos = self.next()
        if got != tok:
            raise ParseError(pos, f"expected {tok!r}, got {got!r}")

    def fail(self, expected):
        got, pos = self.toks[self.i]
        raise ParseError(pos, f"expected {expected}, got {got or 'end of input'!r}")

    def parse(self):
        e = self.expr()
        if self.peek():
            self.fail("end of input")
        return e

    def expr(self):
        e = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.peek() in ("*", "/"):
            op, _ = self.next()
            rhs = self.unary()
            e = e * rhs if op == "*" else e / rhs
        return e

    def unary(self):
        if self.peek() == "-":
            self.next()
            return -self.unary()
        if self.peek() == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        e = self.primary()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            tok, pos = self.next()
            if not tok.isdigit():
                raise ParseError(pos, f"expected integer exponent, got {tok!r}")
            e = e ** (sign * int(tok))
        return e

    def primary(self):
        tok, pos = self.next()
        if tok == "(":
            e = self.expr()
            self.expect(")")
            return e
        if tok.isdigit():
            return const(int(tok))
        if not tok or not (tok[0].isalpha() or tok[0] == "_"):
            raise ParseError(pos, f"expected a value, got {tok or 'end of input'!r}")
        if self.peek() == "(":
            if tok not in _FUNCS:
                raise ParseError(pos, f"unknown function {tok!r}")
            return self.call(tok)
        if tok == "x":
            return x()
        if tok == "y":
            return y()
        return unk(tok)

    def call(self, name):
        self.expect("(")
        if name == "diff":
            fn, pos = self.next()
            if not fn or not (fn[0].isalpha() or fn[0] == "_") or fn in ("x", "y"):
                raise ParseError(pos, "diff expects an unknown-function name")
            self.expect(",")
            self.expect("x")
            order = 1
            if self.peek() == ",":
                self.next()
                tok, pos = self.next()
                if not tok.isdigit():
                    raise ParseError(pos, f"expected integer order, got {tok!r}")
                order = int(tok)
            self.expect(")")
            return unk(fn, order)
        if name == "int":
            g = self.expr()
            self.expect(",")
            self.expect("x")
            anchor = RAT(0)
            if self.peek() == ",":
                self.next()
                a = self.expr()
                if not a.is_const:
                    self.fail("a rational anchor")
                anchor = a.const_value()
            self.expect(")")
            return formal_int(g, anchor)
        arg = self.expr()
        self.expect(")")
        if name == "ln":
            return ln_(arg)
        if name == "arctan":
            return arctan_(arg)
        return exp_(arg)


def parse_expr(text):
    """Parse grammar text into a normalized expression."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Canonical printer


# depth None renders the grammar; an integer renders the human form, with
# the integration dummy at nesting level k named _DUMMIES[k]
_DUMMIES = ("x", "t", "s", "u", "v", "w")


def _dummy(depth):
    return _DUMMIES[depth] if depth < len(_DUMMIES) else f"t{depth}"


def _atom_text(aid, depth=None):
    desc = atom_desc(aid)
    kind = desc[0]
    dv = "x" if depth is None else _dummy(depth)
    if kind == "var":
        return dv if desc[1] == "x" else desc[1]
    if kind == "unk":
        name, order = desc[1], desc[2]
        if order == 0:
            return name if dv == "x" else f"{name}({dv})"
        if order == 1:
            return f"diff({name},{dv})"
        return f"diff({name},{dv},{order})"
    if kind == "param":
        return desc[1]
    if kind == "ln":
        return f"ln({_text(desc[1], depth)})"
    if kind == "arctan":
        return f"arctan({_text(desc[1], depth)})"
    if kind == "exp":
        return f"exp({_text(desc[1], depth)})"
    if depth is None:
        return f"int({_text(desc[1], None)}, x, {desc[2]})"
    inner = depth + 1
    return (f"∫_{{{_rat_text(desc[2])}}}^{{{dv}}} "
            f"{_text(desc[1], inner)} d{_dummy(inner)}")


def _mono_text(mono, depth=None):
    factors = []
    for key, aid, e in sorted((atom_key(a), a, e) for a, e in mono):
        t = _atom_text(aid, depth)
        factors.append(t if e == 1 else f"{t}^{e}")
    return "*".join(factors)


def _rat_text(c):
    n = int(c.numerator)
    d = int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _poly_text(p, depth=None):
    if not p:
        return "0"
    parts = []
    for mono in sorted_monos(p):
        c = p[mono]
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _rat_text(a)
        elif a == 1:
            body = _mono_text(mono, depth)
        else:
            body = f"{_rat_text(a)}*{_mono_text(mono, depth)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def _text(e, depth):
    if isinstance(e, (int, type(rnf.R_ONE))):
        e = const(e)
    if not isinstance(e, Expr):
        raise TypeError(f"cannot render {type(e).__name__}")
    if p_is_const(e.den):
        return _poly_text(e.num, depth)
    return f"({_poly_text(e.num, depth)})/({_poly_text(e.den, depth)})"


def to_text(e):
    """Render an expression in the grammar; canonical for normalized input."""
    return _text(e, None)


def pretty_text(e):
    """Human-oriented rendering: pending quadratures appear as integral
    signs with explicit bounds and dummies, never silently evaluated."""
    return _text(e, 0)
