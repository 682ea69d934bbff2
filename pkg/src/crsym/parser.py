"""Recursive-descent parser for the ASCII expression grammar.

    expr   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" nat)?
    base   := rational | "i" | var | "(" expr ")" | fn "(" expr ")"
    fn     := "log" | "abs2" | "Im" | "Re" | "conj"
    var    := "z" nat | "u"
    rational := int ("/" nat)?

Whitespace is insignificant and juxtaposition is not multiplication.
Conjugate variables are reached through conj(z_j); Im, Re and abs2 are
eliminated via the bar involution during parsing, and each distinct log
argument allocates (or reuses) a formal log symbol in the variable table.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import Expr, ExprError, VarTable
from .scalars import GaussianRational

__all__ = ["ExprSyntaxError", "parse_expr"]

_FUNCTIONS = ("log", "abs2", "Im", "Re", "conj")

_WS = re.compile(r"\s*")
_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9]*)|(.)")


class ExprSyntaxError(ExprError):
    """Syntax or naming error in expression text, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            pos = _WS.match(text, pos).end()
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if m.group(1) is not None:
                self.items.append(("nat", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), m.start(2)))
            else:
                ch = m.group(3)
                if ch not in "+-*^()/":
                    raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(3))
                self.items.append((ch, ch, m.start(3)))
            pos = m.end()
        self.items.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.items[self.i]

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok


def parse_expr(text: str, table: VarTable) -> Expr:
    """Parse grammar text into a canonical expression over `table`."""
    toks = _Tokens(text)
    value = _parse_sum(toks, table)
    kind, lexeme, pos = toks.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected trailing input {lexeme!r}", pos)
    return value


def _parse_sum(toks: _Tokens, table: VarTable) -> Expr:
    value = _parse_term(toks, table)
    while True:
        kind, _, _ = toks.peek()
        if kind == "+":
            toks.next()
            value = value + _parse_term(toks, table)
        elif kind == "-":
            toks.next()
            value = value - _parse_term(toks, table)
        else:
            return value


def _parse_term(toks: _Tokens, table: VarTable) -> Expr:
    value = _parse_factor(toks, table)
    while toks.peek()[0] == "*":
        toks.next()
        value = value * _parse_factor(toks, table)
    return value


def _parse_factor(toks: _Tokens, table: VarTable) -> Expr:
    base = _parse_base(toks, table)
    if toks.peek()[0] == "^":
        toks.next()
        tok = toks.expect("nat")
        return base ** int(tok[1])
    return base


def _parse_rational(toks: _Tokens, negative: bool) -> Fraction:
    tok = toks.expect("nat")
    numerator = -int(tok[1]) if negative else int(tok[1])
    if toks.peek()[0] == "/":
        toks.next()
        den_tok = toks.expect("nat")
        if int(den_tok[1]) == 0:
            raise ExprSyntaxError("zero denominator in rational literal", den_tok[2])
        return Fraction(numerator, int(den_tok[1]))
    return Fraction(numerator)


def _parse_base(toks: _Tokens, table: VarTable) -> Expr:
    kind, lexeme, pos = toks.peek()
    if kind == "-":
        toks.next()
        if toks.peek()[0] != "nat":
            raise ExprSyntaxError("'-' must be followed by a number here", pos)
        return Expr.const(table, _parse_rational(toks, True))
    if kind == "nat":
        return Expr.const(table, _parse_rational(toks, False))
    if kind == "(":
        toks.next()
        inner = _parse_sum(toks, table)
        toks.expect(")")
        return inner
    if kind == "name":
        toks.next()
        if lexeme == "i":
            return Expr.const(table, GaussianRational(0, 1))
        if lexeme in _FUNCTIONS:
            if toks.peek()[0] != "(":
                raise ExprSyntaxError(f"{lexeme} must be followed by '('", pos)
            toks.next()
            arg = _parse_sum(toks, table)
            toks.expect(")")
            return _apply_function(lexeme, arg, table, pos)
        if lexeme == "u":
            return Expr.variable(table, table.u)
        if lexeme[0] == "z" and lexeme[1:].isdigit():
            j = int(lexeme[1:])
            if not 1 <= j <= table.n + 1:
                raise ExprSyntaxError(
                    f"variable z{j} out of range for dimension n={table.n}", pos
                )
            return Expr.variable(table, table.z(j))
        raise ExprSyntaxError(f"unknown variable or function {lexeme!r}", pos)
    raise ExprSyntaxError(f"unexpected token {lexeme!r}", pos)


def _apply_function(name: str, arg: Expr, table: VarTable, pos: int) -> Expr:
    if name == "conj":
        return arg.bar()
    if name == "Im":
        return (arg - arg.bar()) / Expr.const(table, GaussianRational(0, 2))
    if name == "Re":
        return (arg + arg.bar()) / Expr.const(table, 2)
    if name == "abs2":
        return arg * arg.bar()
    # log: the argument must be a bar-invariant non-constant polynomial
    try:
        return Expr.log(table, arg)
    except ExprError as err:
        raise ExprSyntaxError(str(err), pos) from None
