"""Tiny recursive-descent parser for algebraic expressions.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' | '**') INT | atom
    atom   := INT | NAME | '(' expr ')' | '-' atom

NAME is resolved through a caller-supplied symbol table; INT through a
caller-supplied embedding.  The values only need to support the
arithmetic operators, so the same parser serves field elements,
polynomials and pi-point images.
"""

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^|[-+*/()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError(f"unexpected character at position {pos}: {rest[:10]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, symbols, from_int):
        self.tokens = tokens
        self.i = 0
        self.symbols = symbols
        self.from_int = from_int

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self):
        if self.peek() == ("op", "-"):
            self.next()
            value = -self.term()
        else:
            value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op = self.next()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op = self.next()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self):
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.next()
            kind, exp = self.next()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            value = value ** exp
        return value

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return self.from_int(val)
        if kind == "name":
            try:
                return self.symbols[val]
            except KeyError:
                raise ParseError(f"unknown symbol {val!r}") from None
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}")


def parse_expression(text, symbols, from_int):
    """Parse ``text`` into a value built from ``symbols`` and integers."""
    if not text.strip():
        raise ParseError("empty expression")
    parser = _Parser(_tokenize(text), symbols, from_int)
    value = parser.expr()
    if parser.peek()[0] != "end":
        raise ParseError(f"trailing input from token {parser.i}")
    return value
