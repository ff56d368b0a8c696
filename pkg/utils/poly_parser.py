#!/usr/bin/env python3
"""
Parser for polynomial flags such as "1+y", "2 - 3*y^2" or "(1+y)^3".

Grammar (integer coefficients, explicit '*' for multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)?
    atom   := INT | 'y' | '(' expr ')'
"""

import re
from typing import List, Tuple

from utils.coeffs import YRING, YPolynomial, YRationalFunction
from utils.errors import ParseError


TOKEN = re.compile(r"\s*(?:(\d+)|(y)|([-+*^()]))")


def tokenize(text: str) -> List[Tuple[str, str]]:
    """Split text into (kind, value) tokens; kinds are 'int', 'y' and 'op'."""
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN.match(text, position)
        if not match:
            raise ParseError(f"unexpected character {text[position:].lstrip()[:1]!r} in polynomial {text!r}")
        number, variable, op = match.groups()
        if number is not None:
            tokens.append(("int", number))
        elif variable is not None:
            tokens.append(("y", variable))
        else:
            tokens.append(("op", op))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.position = 0

    def peek(self):
        return self.tokens[self.position] if self.position < len(self.tokens) else (None, None)

    def take(self):
        token = self.peek()
        self.position += 1
        return token

    def fail(self, message: str):
        raise ParseError(f"{message} in polynomial {self.text!r}")

    def expr(self) -> YPolynomial:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self) -> YPolynomial:
        value = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> YPolynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self) -> YPolynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "int":
                self.fail("exponent must be a non-negative integer")
            return base ** int(value)
        return base

    def atom(self) -> YPolynomial:
        kind, value = self.take()
        if kind == "int":
            return YRING(int(value))
        if kind == "y":
            return YRING.gens[0]
        if (kind, value) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail("unexpected end" if kind is None else f"unexpected {value!r}")

    def parse(self) -> YPolynomial:
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.position != len(self.tokens):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value


def parse_polynomial(text: str) -> YRationalFunction:
    """
    Parse an integer-coefficient polynomial in y.

    Raises:
        ParseError: If the text does not follow the grammar
    """
    return YRationalFunction.coerce(_Parser(text).parse())
