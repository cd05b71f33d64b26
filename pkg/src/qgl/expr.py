"""Expressions over the quantum matrix generators: parser, canonical printer, evaluator.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" ("(" INT ")" | "-"? INT))?
    atom   := "E[" INT "," INT "]" | "c[" INT "," INT "]" | "det" | "detinv"
            | "v" | INT | "(" expr ")"

``x^(m)`` is the divided power of a generator; negative exponents are only
allowed on ``v``, ``det`` and ``detinv``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .qalgebra import DD, FRT, LocalizedElement, NCPoly, UnsupportedOperation, det, divided_power
from .scalars import ONE, V, Scalar


class ExpressionError(ValueError):
    """Syntax or semantic error; ``offset`` is the byte offset into the source text."""

    def __init__(self, message: str, offset: int | None = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(message + where)
        self.message = message
        self.offset = offset


class IndexOutOfRange(ExpressionError):
    pass


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class VSym:
    pass


@dataclass(frozen=True)
class Gen:
    letter: str  # "E" or "c"
    i: int
    j: int


@dataclass(frozen=True)
class Det:
    inverse: bool = False


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    divided: bool = False


Expression = object  # any of the node classes above

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Pow):
        return 3
    return 4


def to_text(node) -> str:
    """Canonical printing; parentheses only where precedence or left-association needs them."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, VSym):
        return "v"
    if isinstance(node, Gen):
        return f"{node.letter}[{node.i},{node.j}]"
    if isinstance(node, Det):
        return "detinv" if node.inverse else "det"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if _prec(node.base) < 4:
            base = f"({base})"
        return f"{base}^({node.exp})" if node.divided else f"{base}^{node.exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = to_text(node.left)
        if _prec(node.left) < p:
            left = f"({left})"
        right = to_text(node.right)
        if _prec(node.right) <= p:
            right = f"({right})"
        sep = "*" if node.op == "*" else f" {node.op} "
        return f"{left}{sep}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.text = text
        self.data = text.encode()
        self.pos = 0
        self.n = n

    def error(self, msg, pos=None):
        raise ExpressionError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        if self.pos >= len(self.data):
            return ""
        return chr(self.data[self.pos])

    def expect(self, s: str):
        self.skip()
        if not self.data.startswith(s.encode(), self.pos):
            found = chr(self.data[self.pos]) if self.pos < len(self.data) else "end of input"
            self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def integer(self, allow_sign=False) -> int:
        self.skip()
        start = self.pos
        if allow_sign and self.pos < len(self.data) and self.data[self.pos] == ord("-"):
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.data) and chr(self.data[self.pos]).isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected an integer")
        return int(self.data[start : self.pos].decode())

    def parse(self):
        node = self.expr()
        self.skip()
        if self.pos != len(self.data):
            self.error(f"unexpected {chr(self.data[self.pos])!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "*":
            self.pos += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        start = self.pos
        node = self.atom()
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                m = self.integer()
                self.expect(")")
                if not isinstance(node, Gen):
                    self.error("divided powers apply to generators only", start)
                return Pow(node, m, divided=True)
            at = self.pos
            e = self.integer(allow_sign=True)
            if e < 0 and not isinstance(node, (VSym, Det)):
                self.error("negative exponent only allowed on v, det and detinv", at)
            return Pow(node, e)
        return node

    def atom(self):
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if c.isdigit():
            return Int(self.integer())
        if self.data.startswith(b"detinv", self.pos):
            self.pos += 6
            return Det(inverse=True)
        if self.data.startswith(b"det", self.pos):
            self.pos += 3
            return Det()
        if c in ("E", "c") and self.data.startswith(b"[", self.pos + 1):
            self.pos += 2
            i = self.integer()
            self.expect(",")
            j = self.integer()
            self.expect("]")
            if self.n is not None and not (1 <= i <= self.n and 1 <= j <= self.n):
                raise IndexOutOfRange(f"index ({i},{j}) out of range for n={self.n}", start)
            if i < 1 or j < 1:
                raise IndexOutOfRange(f"index ({i},{j}) must be positive", start)
            return Gen(c, i, j)
        if c == "v":
            self.pos += 1
            return VSym()
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected {c!r}")


def parse_expression(text: str, n: int | None = None):
    """Parse ``text``; generator indices are checked against ``n`` when given."""
    return _Parser(text, n).parse()


# --- evaluation ------------------------------------------------------------


def expression_kind(node) -> str | None:
    """FRT for E-generators, DD for c-generators, None if neither occurs."""
    letters = set()

    def walk(x):
        if isinstance(x, Gen):
            letters.add(x.letter)
        elif isinstance(x, BinOp):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Pow):
            walk(x.base)

    walk(node)
    if len(letters) > 1:
        raise ExpressionError("expression mixes E and c generators")
    if not letters:
        return None
    return FRT if letters == {"E"} else DD


def evaluate_expression(node, n: int, kind: str | None = None):
    """Evaluate to an ``NCPoly``, or a ``LocalizedElement`` once ``detinv`` is involved."""
    found = expression_kind(node)
    if kind is None:
        kind = found or FRT
    elif found is not None and found != kind:
        raise ExpressionError(f"expression uses {found} generators but {kind} was requested")

    def lift(x):
        if isinstance(x, LocalizedElement):
            return x
        if x.kind != FRT:
            raise UnsupportedOperation("det^-1 is only available in the FRT presentation")
        return LocalizedElement.from_poly(x)

    def combine(op, a, b):
        if isinstance(a, LocalizedElement) or isinstance(b, LocalizedElement):
            a, b = lift(a), lift(b)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        return (a * b).normal_form() if isinstance(a, NCPoly) else a * b

    def scalar_poly(c: Scalar):
        return NCPoly.scalar(kind, n, c)

    def ev(x):
        if isinstance(x, Int):
            return scalar_poly(Scalar.const(x.value))
        if isinstance(x, VSym):
            return scalar_poly(V)
        if isinstance(x, Gen):
            if x.i > n or x.j > n:
                raise IndexOutOfRange(f"index ({x.i},{x.j}) out of range for n={n}")
            return NCPoly.gen(kind, n, x.i, x.j)
        if isinstance(x, Det):
            if x.inverse:
                if kind != FRT:
                    raise UnsupportedOperation("det^-1 is only available in the FRT presentation")
                return LocalizedElement.det_inverse(n)
            return det(n, kind)
        if isinstance(x, BinOp):
            return combine(x.op, ev(x.left), ev(x.right))
        if isinstance(x, Pow):
            if x.divided:
                return divided_power(kind, n, x.base.i, x.base.j, x.exp).normal_form()
            if isinstance(x.base, VSym):
                return scalar_poly(V ** x.exp)
            if isinstance(x.base, Det) and x.exp < 0:
                return ev(Pow(Det(not x.base.inverse), -x.exp))
            base = ev(x.base)
            out = lift(NCPoly.one(FRT, n)) if isinstance(base, LocalizedElement) else NCPoly.one(kind, n)
            for _ in range(x.exp):
                out = combine("*", out, base)
            return out
        raise TypeError(f"not an expression node: {x!r}")

    return ev(node)


# --- random expressions for round-trip testing -------------------------------


def random_expression(rng: random.Random, n: int = 2, depth: int = 3, letter: str = "E"):
    """Random well-formed AST (generators use one letter so it stays evaluable)."""
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.5:
            return Gen(letter, rng.randint(1, n), rng.randint(1, n))
        if r < 0.65:
            return Int(rng.randint(0, 9))
        if r < 0.8:
            return VSym()
        return Det(inverse=rng.random() < 0.3)
    r = rng.random()
    if r < 0.7:
        return BinOp(rng.choice("+-*"), random_expression(rng, n, depth - 1, letter), random_expression(rng, n, depth - 1, letter))
    base = random_expression(rng, n, 0, letter)
    if isinstance(base, Gen) and rng.random() < 0.4:
        return Pow(base, rng.randint(0, 4), divided=True)
    lo = -3 if isinstance(base, (VSym, Det)) else 0
    return Pow(base, rng.randint(lo, 3))
