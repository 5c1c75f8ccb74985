"""Arithmetic expressions over named variables, evaluated with numpy.

Grammar (``^`` binds tighter than unary minus and is right associative)::

    expr    := term   {("+" | "-") term}
    term    := unary  {("*" | "/") unary}
    unary   := ("-" | "+") unary | power
    power   := atom ["^" unary]
    atom    := number | variable | func "(" expr ")" | "(" expr ")"
    func    := "ln" | "exp" | "atan"

The set of allowed variable names is fixed at parse time, so a weight
expression rejects ``gamma`` and a potential rejects anything but ``x``.
"""

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = ["Expr", "Num", "Var", "Neg", "BinOp", "Call", "parse_expression", "FUNCTIONS"]

FUNCTIONS = {"ln": np.log, "exp": np.exp, "atan": np.arctan}

_BINARY = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.power,
}
_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_UNARY_PRECEDENCE = 3


class Expr:
    precedence = 5

    def __call__(self, **env):
        with np.errstate(all="ignore"):
            return self.evaluate(env)

    def variables(self):
        return set()


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, env):
        return self.value

    def __str__(self):
        return format(self.value, ".17g")


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, env):
        return env[self.name]

    def variables(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    precedence = _UNARY_PRECEDENCE

    def evaluate(self, env):
        return np.negative(self.operand.evaluate(env))

    def variables(self):
        return self.operand.variables()

    def __str__(self):
        inner = str(self.operand)
        if self.operand.precedence < self.precedence:
            inner = f"({inner})"
        return f"-{inner}"


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def precedence(self):
        return _PRECEDENCE[self.op]

    def evaluate(self, env):
        left = np.asarray(self.left.evaluate(env), dtype=float)
        right = np.asarray(self.right.evaluate(env), dtype=float)
        return _BINARY[self.op](left, right)

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __str__(self):
        p = self.precedence
        left, right = str(self.left), str(self.right)
        right_assoc = self.op == "^"
        # Parenthesize whichever side would otherwise re-associate.
        if self.left.precedence < p or (right_assoc and self.left.precedence == p):
            left = f"({left})"
        if self.right.precedence < p or (not right_assoc and self.right.precedence == p):
            right = f"({right})"
        return f"{left}{self.op}{right}" if self.op in "*/^" else f"{left} {self.op} {right}"


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def evaluate(self, env):
        return FUNCTIONS[self.func](np.asarray(self.arg.evaluate(env), dtype=float))

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        return f"{self.func}({self.arg})"


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = frozenset(variables)
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        tokens, pos = [], 0
        while text[pos:].strip():
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                col = len(text) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[col - 1]!r}", text, col)
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind) + 1))
            pos = match.end()
        tokens.append(("end", "", len(text) + 1))
        return tokens

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, got, col = self.take()
        if got != value:
            what = "end of input" if kind == "end" else repr(got)
            raise ParseError(f"expected {value!r}, found {what}", self.text, col)

    def parse(self):
        node = self.expr()
        kind, value, col = self.peek()
        if kind != "end":
            msg = "unbalanced parenthesis" if value == ")" else f"unexpected token {value!r}"
            raise ParseError(msg, self.text, col)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return Neg(self.unary())
        if self.peek()[1] == "+" and self.peek()[0] == "op":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, value, col = self.take()
        if kind == "number":
            return Num(float(value))
        if kind == "name":
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            if value in self.variables:
                return Var(value)
            raise ParseError(f"unknown identifier {value!r}", self.text, col)
        if value == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", self.text, col)


def parse_expression(text, variables=("alpha", "beta")):
    """Parse ``text`` into an :class:`Expr` over the given variable names."""
    return _Parser(text, variables).parse()
