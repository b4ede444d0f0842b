"""Text syntax for polynomials.

Grammar, loosest to tightest::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary_exp)?        # right-associative
    atom   := NUMBER | VARIABLE | '(' expr ')'

NUMBER is an integer or a rational literal ``a/b``. Exponents must evaluate to
nonnegative integer constants. ``#`` starts a comment running to end of line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact_poly import MultiPoly


class PolySyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, VAR, OP, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<num>\d+(?:/\d+)?)"
                       r"|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "num":
            tokens.append(Token("NUM", m.group(), line, col))
        elif kind == "var":
            tokens.append(Token("VAR", m.group(), line, col))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, col))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    # end of input sits just past the last token, not after trailing blank lines
    if tokens:
        last = tokens[-1]
        tokens.append(Token("EOF", "", last.line, last.column + len(last.text)))
    else:
        tokens.append(Token("EOF", "", 1, 1))
    return tokens


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(nvars))


class _Parser:
    def __init__(self, text: str, names: tuple[str, ...]):
        self.tokens = tokenize(text)
        self.i = 0
        self.names = names
        self.nvars = len(names)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok.line, tok.column)

    def expect(self, text: str) -> None:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            what = "end of input" if tok.kind == "EOF" else repr(tok.text)
            self.error(f"expected {text!r}, found {what}")
        self.next()

    def parse(self) -> MultiPoly:
        if self.peek().kind == "EOF":
            self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "EOF":
            self.error(f"unexpected {self.peek().text!r}")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.next().text
            rhs = self.term()
            p = p + rhs if op == "+" else p - rhs
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.next()
            p = p * self.unary()
        return p

    def unary(self) -> MultiPoly:
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.next()
            tok = self.peek()  # errors point at the start of the exponent
            exp = self._exponent()
            if not exp.is_constant():
                self.error("exponent must be a constant", tok)
            value = exp.coeff((0,) * self.nvars)
            if value.denominator != 1:
                self.error("exponent must be an integer", tok)
            if value < 0:
                self.error("negative exponent", tok)
            return base ** int(value)
        return base

    def _exponent(self) -> MultiPoly:
        # right operand of '^' may carry its own sign and '^'
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.next()
            return -self._exponent()
        return self.power()

    def atom(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                self.error("zero denominator", tok)
            return MultiPoly.constant(self.nvars, Fraction(int(num), int(den) if den else 1))
        if tok.kind == "VAR":
            self.next()
            if tok.text not in self.names:
                self.error(f"unknown variable {tok.text!r}", tok)
            return MultiPoly.var(self.nvars, self.names.index(tok.text))
        if tok.kind == "OP" and tok.text == "(":
            self.next()
            p = self.expr()
            self.expect(")")
            return p
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        self.error(f"expected a number, variable or '(', found {what}")


def parse_polynomial(text: str, nvars: int = 3, names: tuple[str, ...] | None = None) -> MultiPoly:
    names = tuple(names) if names else default_names(nvars)
    return _Parser(text, names).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: MultiPoly, names: tuple[str, ...] | None = None) -> str:
    """Canonical text form; terms in grlex order, e.g. ``3*X1^2 - X1*X2``."""
    names = tuple(names) if names else default_names(p.nvars)
    if p.is_zero():
        return "0"
    parts = []
    for idx, (e, c) in enumerate(p.terms):
        mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if idx == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)
