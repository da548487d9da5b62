"""Expression grammar for polynomial input and its inverse renderer.

Grammar (recursive descent, 1-based columns in errors):

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    atom     := NUMBER | 'x' | '(' expr ')'
    exponent := INT | '(' '-'? INT ')'
    NUMBER   := digits ('/' digits)?     -- a rational literal, no spaces

Precedence is '^' over unary minus over '*' over '+'/'-'.  Exponents must
be nonnegative integers; implicit multiplication is rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Polynomial
from .errors import ExprSyntaxError, NegativeExponent

_OPERATOR_CHARS = "+-*^()"


class _Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind, text, column):
        self.kind = kind
        self.text = text
        self.column = column


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _OPERATOR_CHARS:
            tokens.append(_Token(ch, ch, col))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(_Token("number", text[i:j], col))
            i = j
        elif ch == "x":
            if i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_"):
                raise ExprSyntaxError(f"unknown name starting {text[i:i+2]!r}", col)
            tokens.append(_Token("x", ch, col))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", col)
    tokens.append(_Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.column)
        return tok

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            result = result + rhs if op.kind == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek().kind == "*":
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.take()
        return base ** self.exponent()

    def exponent(self) -> int:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            if "/" in tok.text:
                raise ExprSyntaxError("exponent must be an integer", tok.column)
            return int(tok.text)
        if tok.kind == "-":
            raise NegativeExponent(tok.column)
        if tok.kind == "(":
            open_col = tok.column
            self.take()
            if self.peek().kind == "-":
                raise NegativeExponent(open_col)
            inner = self.expect("number")
            if "/" in inner.text:
                raise ExprSyntaxError("exponent must be an integer", inner.column)
            self.expect(")")
            return int(inner.text)
        raise ExprSyntaxError("expected an integer exponent", tok.column)

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "number":
            return Polynomial.constant(Fraction(tok.text))
        if tok.kind == "x":
            return Polynomial.x()
        if tok.kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(
            f"expected a number, 'x', or '(', found {tok.text or 'end of input'!r}",
            tok.column)


def parse_expr(text: str) -> Polynomial:
    """Parse expression text to an exact polynomial."""
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(f"unexpected {trailing.text!r}", trailing.column)
    return result


def render(p: Polynomial) -> str:
    """Render a polynomial in the input grammar; parse(render(p)) == p."""
    if p.is_zero():
        return "0"
    parts = []
    for d in range(int(p.degree), -1, -1):
        c = p.coefficient(d)
        if not c:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            xpow = "x" if d == 1 else f"x^{d}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
