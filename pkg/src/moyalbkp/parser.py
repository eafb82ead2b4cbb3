"""Recursive-descent parser for the text form printed by the engine.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" INT)?          INT may be negative for p and e only
    primary := NUMBER | "e" | "p" | GEN deriv? | "Dxi" ("^" INT)? "(" expr ")"
             | "(" expr ")"
    GEN     := ("a" | "w" | "u") DIGITS
    deriv   := "^(" INT (";" INT)? ")"

``*`` is the ordinary commutative product of coefficient functions and powers
of ``p``; it is *not* the star product.  ``/`` accepts a constant divisor
``c*e^k`` only.
"""

import re

from .diffpoly import ONE, DiffPoly, eps, integral
from .errors import ParseError
from .psymbol import PSymbol, dot

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<dxi>Dxi)|(?P<gen>[awu]\d+)|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[-+*/^();]))")


def _tokenize(text):
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, expected, message=None):
        kind, val, pos = self.tok
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(message or f"unexpected {what}", pos, expected)

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error([repr(value)])

    def integer(self, signed=False):
        neg = False
        if signed and self.accept("-"):
            neg = True
        if self.tok[0] != "num":
            self.error(["integer", "'-'"] if signed and not neg else ["integer"])
        v = int(self.tok[1])
        self.i += 1
        return -v if neg else v

    def parse(self):
        value = self.expr()
        if self.tok[0] != "end":
            self.error(["'+'", "'-'", "'*'", "'/'", "end of input"])
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self.accept("*"):
                value = dot(value, self.unary())
            elif self.tok[0] == "op" and self.tok[1] == "/":
                pos = self.tok[2]
                self.i += 1
                value = _divide(value, self.unary(), pos)
            else:
                return value

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self):
        start = self.tok[2]
        base, kind = self.primary()
        if not self.accept("^"):
            return base
        n = self.integer(signed=True)
        if n >= 0:
            out = PSymbol({0: ONE})
            for _ in range(n):
                out = dot(out, base)
            return out
        if kind == "p":
            return PSymbol({n: ONE})
        if kind == "e":
            return PSymbol({0: eps(n)})
        raise ParseError("negative powers are only allowed for p and e", start)

    def primary(self):
        kind, val, pos = self.tok
        if kind == "num":
            self.i += 1
            return PSymbol({0: DiffPoly.constant(int(val))}), "num"
        if kind == "gen":
            self.i += 1
            x = y = 0
            if (self.tok[0] == "op" and self.tok[1] == "^"
                    and self.toks[self.i + 1][0] == "op" and self.toks[self.i + 1][1] == "("):
                self.i += 2
                x = self.integer()
                if self.accept(";"):
                    y = self.integer()
                self.expect(")")
            try:
                g = DiffPoly.generator(val[0], int(val[1:]), x, y)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
            return PSymbol({0: g}), "gen"
        if kind == "name":
            self.i += 1
            if val == "e":
                return PSymbol({0: eps(1)}), "e"
            if val == "p":
                return PSymbol({1: ONE}), "p"
            raise ParseError(f"unknown name {val!r}", pos, ["generator", "'e'", "'p'", "'Dxi'"])
        if kind == "dxi":
            self.i += 1
            depth = 1
            if self.accept("^"):
                depth = self.integer()
                if depth < 1:
                    raise ParseError("Dxi depth must be positive", self.toks[self.i - 1][2])
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if set(inner.coeffs) - {0}:
                raise ParseError("Dxi argument must not contain p", pos)
            return PSymbol({0: integral(inner.coeffs.get(0, DiffPoly()), depth)}), "dxi"
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner, "paren"
        self.error(["number", "generator", "'e'", "'p'", "'Dxi'", "'('"])


def _divide(value, divisor, pos):
    items = list(divisor.coeffs.items())
    if len(items) == 1 and items[0][0] == 0:
        terms = list(items[0][1].items())
        if len(terms) == 1 and not terms[0][0][1]:
            (k, _), c = terms[0]
            return value.map(lambda v: v.shift_eps(-k) / c)
    raise ParseError("can only divide by a constant c*e^k", pos)


def parse_expression(text):
    """Parse text into a :class:`DiffPoly` (no ``p``) or an exact :class:`PSymbol`."""
    value = _Parser(text).parse()
    if set(value.coeffs) <= {0}:
        return value.coeffs.get(0, DiffPoly())
    return value


def parse_symbol(text, floor=None):
    """Parse text as a symbol, optionally declaring its exactness floor."""
    value = parse_expression(text)
    if isinstance(value, DiffPoly):
        value = PSymbol({0: value})
    return PSymbol(value.coeffs, floor)


def parse_poly(text):
    value = parse_expression(text)
    if not isinstance(value, DiffPoly):
        raise ParseError("expected an expression without p", 0)
    return value


