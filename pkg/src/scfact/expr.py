"""A small arithmetic expression language for coefficient formulas.

Precedence, loosest first: ``+ -``, ``* /``, unary ``-``, ``^`` (right
associative).  Identifiers are ``n`` (the index), ``s`` (the grid variable of
a sampled ring), ``pi`` and the functions ``cos``, ``sin``, ``sqrt``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExpressionTypeError, ParseError
from .rings import RealField, Ring, RingValue, SampledFunctionRing

FUNCTIONS = ("cos", "sin", "sqrt")


@dataclass(frozen=True)
class Num:
    text: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit() or (c == "." and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == ".":
                j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
            tokens.append(("num", text[i:j], i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        elif c in "+-*/^()":
            tokens.append(("op", c, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.floaty = ring is None or isinstance(ring, (RealField, SampledFunctionRing))

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, off = self.peek()
        if text != value or kind != "op":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", off)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def primary(self):
        kind, text, off = self.advance()
        if kind == "num":
            return Num(text)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "ident":
            if text == "n":
                return Var("n")
            if text == "s":
                if self.ring is not None and not isinstance(self.ring, SampledFunctionRing):
                    raise ExpressionTypeError(f"variable 's' needs a sampled ring, not {self.ring}")
                return Var("s")
            if text == "pi":
                self._need_float(text)
                return Pi()
            if text in FUNCTIONS:
                self._need_float(text)
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise ParseError(f"unknown identifier {text!r}", off)
        if kind == "end":
            raise ParseError("unexpected end of input", off)
        raise ParseError(f"unexpected {text!r}", off)

    def _need_float(self, name: str):
        if not self.floaty:
            raise ExpressionTypeError(f"{name!r} is only available over real or sampled rings, not {self.ring}")


def parse_expression(text: str, ring: Ring | None = None):
    """Parse ``text`` into an AST, rejecting float-only constructs for exact ``ring``."""
    return _Parser(text, ring).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 5


def to_text(node) -> str:
    """Render an AST so that parsing the result gives back an equal AST."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        return "-" + (inner if _prec(node.operand) >= 3 else f"({inner})")
    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= 4:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def _exponent(node, n: int) -> int:
    value = _rational_eval(node, n)
    if value.denominator != 1 or value < 0:
        raise ValueError(f"exponent {to_text(node)} = {value} is not a nonnegative integer")
    return int(value)


def _rational_eval(node, n: int) -> Fraction:
    if isinstance(node, Num):
        return Fraction(node.text)
    if isinstance(node, Var) and node.name == "n":
        return Fraction(n)
    if isinstance(node, Neg):
        return -_rational_eval(node.operand, n)
    if isinstance(node, BinOp):
        a = _rational_eval(node.left, n)
        if node.op == "^":
            return a ** _exponent(node.right, n)
        b = _rational_eval(node.right, n)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero in exponent")
        return a / b
    raise ValueError(f"{to_text(node)} cannot appear in an exponent")


def _apply(fn: str, x: RingValue) -> RingValue:
    ring = x.ring
    if fn == "sqrt":
        return x.sqrt()
    f = math.cos if fn == "cos" else math.sin
    if isinstance(ring, SampledFunctionRing):
        return ring(tuple(f(v) for v in x.payload))
    return ring(f(x.payload))


def evaluate(node, ring: Ring, n: int) -> RingValue:
    """Evaluate an AST at index ``n`` in ``ring``."""
    if isinstance(node, Num):
        return ring(Fraction(node.text))
    if isinstance(node, Var):
        if node.name == "n":
            return ring(n)
        if not isinstance(ring, SampledFunctionRing):
            raise ExpressionTypeError(f"variable 's' needs a sampled ring, not {ring}")
        return ring.variable()
    if isinstance(node, Pi):
        return ring(math.pi)
    if isinstance(node, Call):
        if ring.is_exact:
            raise ExpressionTypeError(f"{node.fn} is not available over {ring}")
        return _apply(node.fn, evaluate(node.arg, ring, n))
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring, n)
    left = evaluate(node.left, ring, n)
    if node.op == "^":
        return left ** _exponent(node.right, n)
    right = evaluate(node.right, ring, n)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right
