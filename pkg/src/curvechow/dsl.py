"""A small expression language for intersection computations on C^n.

Grammar (whitespace is ignored)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := primary ("^" exponent)?
    exponent := INT | "n" | "(" INT ")" | "(" "n" ("-" INT)? ")"
    primary  := INT | "g" | "d" | "r"
              | "H" | "delta" | "delta_prime" | "fund"
              | "P" "(" INT ")" | "D" "(" INT "," INT ")"
              | "eta" "(" "{" (INT ("," INT)*)? "}" ")"
              | ("integrate" | "pushforward1" | "pullback1") "(" expr ")"
              | "(" expr ")"

``n`` may appear only in exponents and is bound to the ambient power given to
:func:`evaluate`. Inside ``pullback1(...)`` the atoms live on C^(m-1) and
inside ``pushforward1(...)`` on C^(m+1), where m is the enclosing ambient.
The divisor of ``/`` must evaluate to a nonzero rational constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import chow
from .chow import AmbientError, ChowClass
from .poly import RatPoly


class DSLError(Exception):
    pass


class DSLSyntaxError(DSLError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class EvaluationError(DSLError):
    pass


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Atom:
    name: str  # H, delta, delta_prime, fund


@dataclass(frozen=True)
class Point:
    i: int


@dataclass(frozen=True)
class Diag:
    i: int
    j: int


@dataclass(frozen=True)
class Eta:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Exponent:
    """Literal ``k`` when ``relative`` is False, else ``n - k``."""

    k: int
    relative: bool = False

    def resolve(self, n: int | None) -> int:
        if not self.relative:
            return self.k
        if n is None:
            raise EvaluationError("exponent uses n but no ambient n was given")
        return n - self.k


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Exponent


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Sym, Atom, Point, Diag, Eta, Neg, BinOp, Pow, Call]

FUNCTIONS = ("integrate", "pushforward1", "pullback1")
ATOMS = ("H", "delta", "delta_prime", "fund")
SCALARS = ("g", "d", "r")


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("·", "*").replace("−", "-")
    tokens = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),{}":
                raise DSLSyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise DSLSyntaxError(f"{message}, found {found}", tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            self.error(f"expected {value!r}")
        return self.next()

    def accept(self, value) -> bool:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        tok = self.peek()
        if tok[0] != "int":
            self.error("expected an integer")
        self.next()
        return int(tok[1])

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.next()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.next()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.accept("^"):
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> Exponent:
        tok = self.peek()
        if tok[0] == "int":
            return Exponent(self.integer())
        if tok[0] == "name" and tok[1] == "n":
            self.next()
            return Exponent(0, relative=True)
        if self.accept("("):
            tok = self.peek()
            if tok[0] == "int":
                e = Exponent(self.integer())
            elif tok[0] == "name" and tok[1] == "n":
                self.next()
                e = Exponent(self.integer(), True) if self.accept("-") else Exponent(0, True)
            else:
                self.error("expected an exponent")
            self.expect(")")
            return e
        self.error("expected an exponent")

    def primary(self) -> Node:
        tok = self.peek()
        if tok[0] == "int":
            return Num(self.integer())
        if tok[0] == "op" and tok[1] == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok[0] != "name":
            self.error("expected an operand")
        name = tok[1]
        self.next()
        if name in SCALARS:
            return Sym(name)
        if name in ATOMS:
            return Atom(name)
        if name == "P":
            self.expect("(")
            i = self.integer()
            self.expect(")")
            return Point(i)
        if name == "D":
            self.expect("(")
            i = self.integer()
            self.expect(",")
            j = self.integer()
            self.expect(")")
            return Diag(i, j)
        if name == "eta":
            self.expect("(")
            self.expect("{")
            idx = []
            if not self.accept("}"):
                idx.append(self.integer())
                while self.accept(","):
                    idx.append(self.integer())
                self.expect("}")
            self.expect(")")
            return Eta(tuple(sorted(set(idx))))
        if name in FUNCTIONS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(name, arg)
        self.error("unknown identifier", tok)


def parse(text: str) -> Node:
    return _Parser(text).parse()


# -- printer ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrap(node: Node, min_prec: int) -> str:
    s = to_text(node)
    return f"({s})" if _prec(node) < min_prec else s


def to_text(node: Node) -> str:
    """Render an AST so that ``parse(to_text(ast)) == ast``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Sym, Atom)):
        return node.name
    if isinstance(node, Point):
        return f"P({node.i})"
    if isinstance(node, Diag):
        return f"D({node.i},{node.j})"
    if isinstance(node, Eta):
        return "eta({" + ",".join(map(str, node.indices)) + "})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        return f"{_wrap(node.left, p)} {node.op} {_wrap(node.right, p + 1)}"
    if isinstance(node, Pow):
        e = node.exponent
        if not e.relative:
            exp = str(e.k)
        else:
            exp = "n" if e.k == 0 else f"(n-{e.k})"
        return f"{_wrap(node.base, 5)}^{exp}"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation ---------------------------------------------------------------

Value = Union[RatPoly, ChowClass]


def _as_class(v: Value, m: int) -> ChowClass:
    if isinstance(v, ChowClass):
        return v
    return chow.fundamental(m) * v


def _eval(node: Node, m: int, n: int | None) -> Value:
    if isinstance(node, Num):
        return RatPoly.const(node.value)
    if isinstance(node, Sym):
        return RatPoly.symbol(node.name)
    if isinstance(node, Atom):
        if node.name == "fund":
            return chow.fundamental(m)
        H, delta, delta_prime = chow.symmetric_classes(m)
        return {"H": H, "delta": delta, "delta_prime": delta_prime}[node.name]
    if isinstance(node, Point):
        return chow.point(node.i, m)
    if isinstance(node, Diag):
        return chow.diagonal(node.i, node.j, m)
    if isinstance(node, Eta):
        return chow.eta(node.indices, m)
    if isinstance(node, Neg):
        return -_eval(node.operand, m, n)
    if isinstance(node, BinOp):
        a = _eval(node.left, m, n)
        b = _eval(node.right, m, n)
        if node.op == "/":
            if not isinstance(b, RatPoly) or not b.is_constant() or b.is_zero():
                raise EvaluationError(f"cannot divide by {b}: divisor must be a nonzero rational")
            return a / b.constant_value()
        if isinstance(a, RatPoly) and isinstance(b, RatPoly):
            return {"+": a + b, "-": a - b, "*": a * b}[node.op]
        if node.op == "*":
            if isinstance(a, ChowClass) and isinstance(b, ChowClass):
                return chow.multiply(a, b)
            return a * b
        a, b = _as_class(a, m), _as_class(b, m)
        return a + b if node.op == "+" else a - b
    if isinstance(node, Pow):
        k = node.exponent.resolve(n)
        if k < 0:
            raise EvaluationError(f"exponent {to_text(node)} resolves to {k} < 0 for n={n}")
        base = _eval(node.base, m, n)
        return base ** k
    if isinstance(node, Call):
        if node.func == "integrate":
            return chow.integrate(_as_class(_eval(node.arg, m, n), m))
        if node.func == "pushforward1":
            return chow.pushforward_forget_first(_as_class(_eval(node.arg, m + 1, n), m + 1))
        if node.func == "pullback1":
            if m < 2:
                raise EvaluationError("pullback1 needs an ambient power of at least 2")
            return chow.pullback_insert_first(_as_class(_eval(node.arg, m - 1, n), m - 1))
    raise TypeError(f"not an AST node: {node!r}")


def evaluate(node: Node | str, n: int) -> Value:
    """Evaluate on C^n. Returns a RatPoly for scalar-valued expressions
    (including anything wrapped in ``integrate``), else a ChowClass."""
    if isinstance(node, str):
        node = parse(node)
    try:
        return _eval(node, n, n)
    except AmbientError as exc:
        raise EvaluationError(str(exc)) from exc
