"""Parser for the small operator-expression language used by relation texts.

Grammar (precedence, tightest first):

    postfix dagger  A'  or  A†
    power           A^n        (n an optional-signed integer)
    product         A*B, A/B
    sum             A + B, A - B, unary -
    brackets        [A, B] commutator, {A, B} anticommutator

Parsing never touches an algebra: names are resolved lazily when the AST
is evaluated against an environment, so "[Jp, nosuch]" parses fine and
fails at evaluation with the offending position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .weyl import OperatorExpr


class ParseError(Exception):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.pos = pos
        self.line = line
        self.col = col


class EvalError(Exception):
    pass


class UnknownName(EvalError):
    pass


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Name:
    ident: str
    pos: int = 0


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" | "dag"
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str  # "add" | "sub" | "mul" | "div" | "comm" | "anti"
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


# -- tokenizer -------------------------------------------------------------

_PUNCT = set("+-*/^()[]{},'")


def _tokens(text):
    i, n = 0, len(text)
    out = []
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
            continue
        if ch == "†":  # dagger, same as postfix '
            out.append(("'", "'", i))
            i += 1
            continue
        if ch in _PUNCT:
            out.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    out.append(("end", "", n))
    return out


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end'!r}",
                             self.text, t[2])
        return t

    def parse(self):
        node = self.sum()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"trailing input {t[1]!r}", self.text, t[2])
        return node

    def sum(self):
        node = self.signed_product()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.signed_product()
            node = Binary("add" if op == "+" else "sub", node, rhs)
        return node

    def signed_product(self):
        if self.peek()[0] == "-":
            self.next()
            return Unary("neg", self.product())
        return self.product()

    def product(self):
        node = self.power()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.power()
            node = Binary("mul" if op == "*" else "div", node, rhs)
        return node

    def power(self):
        node = self.postfix()
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            t = self.expect("int")
            node = Power(node, sign * t[1])
        return node

    def postfix(self):
        node = self.atom()
        while self.peek()[0] == "'":
            self.next()
            node = Unary("dag", node)
        return node

    def atom(self):
        t = self.next()
        kind, val, pos = t
        if kind == "int":
            return Lit(val)
        if kind == "name":
            return Name(val, pos)
        if kind == "(":
            node = self.sum()
            self.expect(")")
            return node
        if kind == "[":
            a = self.sum()
            self.expect(",")
            b = self.sum()
            self.expect("]")
            return Binary("comm", a, b)
        if kind == "{":
            a = self.sum()
            self.expect(",")
            b = self.sum()
            self.expect("}")
            return Binary("anti", a, b)
        raise ParseError(f"unexpected {val or 'end'!r}", self.text, pos)


def parse(text: str):
    return _Parser(text).parse()


# -- evaluation ------------------------------------------------------------
#
# The same AST is evaluated against different value algebras: symbolic
# (ScalarExpr / OperatorExpr) for exact residuals, and numeric
# (complex / linear actions on Fock states) for the oracle.  Values only
# need the arithmetic dunders plus dagger()/conjugate() for the postfix.


def _dagger(v):
    if isinstance(v, OperatorExpr):
        return v.dagger()
    if hasattr(v, "conjugate"):
        return v.conjugate()
    raise EvalError(f"no adjoint defined for {type(v).__name__}")


def evaluate(node, env):
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Name):
        try:
            return env[node.ident]
        except KeyError:
            raise UnknownName(
                f"unknown identifier {node.ident!r} at offset {node.pos}") \
                from None
    if isinstance(node, Unary):
        v = evaluate(node.arg, env)
        return -v if node.op == "neg" else _dagger(v)
    if isinstance(node, Power):
        base = evaluate(node.base, env)
        if node.exponent < 0 and isinstance(base, int):
            return Fraction(1, base) ** (-node.exponent)
        return base ** node.exponent
    a = evaluate(node.left, env)
    b = evaluate(node.right, env)
    if node.op == "add":
        return a + b
    if node.op == "sub":
        return a - b
    if node.op == "mul":
        return a * b
    if node.op == "div":
        if isinstance(b, OperatorExpr):
            raise EvalError("division by an operator")
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a * (1 / b)
    if node.op == "comm":
        return a * b - b * a
    if node.op == "anti":
        return a * b + b * a
    raise EvalError(f"unknown node op {node.op!r}")  # pragma: no cover


def parse_and_eval(text: str, env):
    return evaluate(parse(text), env)


# -- printing --------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3,
         "pow": 4, "dag": 5, "atom": 6}


def _prec(node):
    if isinstance(node, (Name, Lit)):
        return _PREC["atom"]
    if isinstance(node, Power):
        return _PREC["pow"]
    if isinstance(node, Unary):
        return _PREC[node.op]
    if node.op in ("comm", "anti"):
        return _PREC["atom"]  # brackets delimit themselves
    return _PREC[node.op]


def to_text(node) -> str:
    def wrap(child, level):
        s = to_text(child)
        return f"({s})" if _prec(child) < level else s

    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Unary):
        if node.op == "neg":
            return "-" + wrap(node.arg, _PREC["neg"])
        return wrap(node.arg, _PREC["dag"]) + "'"
    if isinstance(node, Power):
        return f"{wrap(node.base, _PREC['pow'] + 1)}^{node.exponent}"
    l, r = node.left, node.right
    if node.op == "comm":
        return f"[{to_text(l)}, {to_text(r)}]"
    if node.op == "anti":
        return f"{{{to_text(l)}, {to_text(r)}}}"
    sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[node.op]
    lvl = _PREC[node.op]
    # - and / do not associate on the right
    right_lvl = lvl + 1 if node.op in ("sub", "div") else lvl
    return wrap(l, lvl) + sym + wrap(r, right_lvl)
