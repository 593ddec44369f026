"""Surface syntax: a recursive-descent expression parser and the
coefficient-list literal format.

Grammar (expression mode)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)*          # left-associative
    exponent := INTEGER                       # sequence mode also allows n
    atom     := INTEGER | NAME '(' expr ')' | NAME | '(' expr ')'

Names: ``eps`` (the infinitesimal unit), ``w`` and ``G`` (the infinite
unit), the variable ``x``, and the functions sin cos exp sign St NstE
NstW abs.  ``a/b`` over integer literals folds to an exact rational
constant; division elsewhere stays symbolic.

Any text containing a comma is read as a rendered coefficient list
("-1, 0, ^2, 2, 0, ..."), giving back the stream literal, so rendering
round-trips through the parser on the rational fragment.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import expr as E
from .number import PartSelector, RzlNumber, from_coefficients

_GROSSONE = "①"

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|"
                    rf"([+\-*/^()])|({_GROSSONE}))")

_FUNCTIONS = {
    "sin": E.Sin,
    "cos": E.Cos,
    "exp": E.Exp,
    "sign": E.Sign,
    "abs": E.Abs,
}

_PARTS = {
    "St": PartSelector.ST,
    "NstE": PartSelector.NST_EPSILON,
    "NstW": PartSelector.NST_OMEGA,
}


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                rest = text[pos:]
                stripped = rest.lstrip()
                if stripped == "":
                    break
                bad = pos + (len(rest) - len(stripped))
                raise ParseError(f"unexpected character {text[bad]!r}", bad)
            number, name, op, circled = m.groups()
            if number is not None:
                self.items.append(("num", int(number), m.start(1)))
            elif name is not None:
                self.items.append(("name", name, m.start(2)))
            elif circled is not None:
                self.items.append(("name", "w", m.start(4)))
            else:
                self.items.append(("op", op, m.start(3)))
            pos = m.end()
        self.items.append(("end", None, len(text)))
        self.i = 0

    def peek(self):
        return self.items[self.i]

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)


class _Parser:
    def __init__(self, text: str, variable: str):
        self.toks = _Tokens(text)
        self.variable = variable

    def parse(self) -> E.Expr:
        node = self.expr()
        kind, val, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return node

    def expr(self) -> E.Expr:
        node = self.term()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val in "+-":
                self.toks.next()
                rhs = self.term()
                node = E.Add(node, rhs) if val == "+" else E.Sub(node, rhs)
            else:
                return node

    def term(self) -> E.Expr:
        node = self.unary()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val in "*/":
                self.toks.next()
                rhs = self.unary()
                if val == "*":
                    node = E.Mul(node, rhs)
                else:
                    node = self._divide(node, rhs)
            else:
                return node

    @staticmethod
    def _divide(lhs: E.Expr, rhs: E.Expr) -> E.Expr:
        # fold integer-literal quotients into exact rational constants
        if isinstance(lhs, E.Const) and isinstance(rhs, E.Const):
            if Fraction(rhs.value) == 0:
                raise ZeroDivisionError("division by zero in constant")
            return E.Const(Fraction(lhs.value) / Fraction(rhs.value))
        return E.Div(lhs, rhs)

    def unary(self) -> E.Expr:
        kind, val, _ = self.toks.peek()
        if kind == "op" and val == "-":
            self.toks.next()
            inner = self.unary()
            if isinstance(inner, E.Const):
                return E.Const(-Fraction(inner.value))
            return E.Sub(E.Const(0), inner)
        return self.power()

    def power(self) -> E.Expr:
        node = self.atom()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val == "^":
                self.toks.next()
                node = self._apply_power(node)
            else:
                return node

    def _apply_power(self, base: E.Expr) -> E.Expr:
        kind, val, pos = self.toks.peek()
        if kind == "num":
            self.toks.next()
            return E.PowInt(base, val)
        if kind == "name" and val == self.variable == "n":
            self.toks.next()
            return E.PowSym(base, E.Var("n"))
        if kind == "op" and val == "(" and self.variable == "n":
            self.toks.next()
            inner = self.expr()
            self.toks.expect_op(")")
            return E.PowSym(base, inner)
        raise ParseError("exponent must be a nonnegative integer", pos)

    def atom(self) -> E.Expr:
        kind, val, pos = self.toks.next()
        if kind == "num":
            return E.Const(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.toks.expect_op(")")
            return node
        if kind == "name":
            nxt_kind, nxt_val, _ = self.toks.peek()
            if nxt_kind == "op" and nxt_val == "(":
                ctor = _FUNCTIONS.get(val)
                sel = _PARTS.get(val)
                if ctor is None and sel is None:
                    raise ParseError(f"unknown function {val!r}", pos)
                self.toks.next()
                arg = self.expr()
                self.toks.expect_op(")")
                return ctor(arg) if ctor is not None else E.Part(sel, arg)
            if val == "eps":
                return E.EpsilonLit()
            if val in ("w", "G"):
                return E.OmegaLit()
            if val == self.variable:
                return E.Var(val)
            raise ParseError(f"unknown identifier {val!r}", pos)
        raise ParseError("expected a number, name or parenthesis", pos)


def parse(text: str):
    """Parse surface syntax to an expression tree, or a rendered
    coefficient list back to a stream literal."""
    if "," in text:
        return parse_rendered(text)
    return _Parser(text, "x").parse()


def parse_sequence(text: str):
    """Parse an expression in the term index n; returns n -> stream."""
    tree = _Parser(text, "n").parse()

    def term(n: int) -> RzlNumber:
        from .calculus import evaluate
        resolved = _resolve_pow(E.substitute(tree, E.Const(n), "n"))
        return evaluate(resolved, from_coefficients(0, [0]), var="n")

    return term


def _resolve_pow(tree: E.Expr) -> E.Expr:
    """Turn symbolic powers into integer powers once n is substituted."""
    from .calculus import eval_scalar
    if isinstance(tree, (E.Add, E.Sub, E.Mul, E.Div)):
        return type(tree)(_resolve_pow(tree.left), _resolve_pow(tree.right))
    if isinstance(tree, E.PowInt):
        return E.PowInt(_resolve_pow(tree.base), tree.exponent)
    if isinstance(tree, E.PowSym):
        val = eval_scalar(_resolve_pow(tree.exponent), 0)
        frac = Fraction(val)
        if frac.denominator != 1 or frac < 0:
            raise ValueError("exponent must resolve to a nonnegative integer")
        return E.PowInt(_resolve_pow(tree.base), int(frac))
    if isinstance(tree, (E.Sin, E.Cos, E.Exp, E.Sign, E.Abs)):
        return type(tree)(_resolve_pow(tree.arg))
    if isinstance(tree, E.Part):
        return E.Part(tree.selector, _resolve_pow(tree.arg))
    return tree


def parse_rendered(text: str) -> RzlNumber:
    """Inverse of `render` on the rational fragment."""
    body = text.strip()
    entries = [e.strip() for e in body.split(",")]
    while entries and entries[-1] in ("...", ""):
        entries.pop()
    if not entries:
        raise ParseError("empty coefficient list", 0)
    caret_at = [i for i, e in enumerate(entries) if e.startswith("^")]
    if len(caret_at) != 1:
        raise ParseError("coefficient list needs exactly one ^ entry", 0)
    k = caret_at[0]
    coeffs = []
    for i, entry in enumerate(entries):
        raw = entry[1:].strip() if i == k else entry
        coeffs.append(_parse_rational(raw))
    return from_coefficients(-k, coeffs)


def _parse_rational(raw: str):
    m = re.fullmatch(r"(-?\d+)(?:\s*/\s*(\d+))?", raw)
    if m is None:
        raise ParseError(f"not an exact rational: {raw!r}", 0)
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    return Fraction(num, int(m.group(2)))
