"""Expressions for cobordism classes built from named varieties.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := primary ('^' INT)*
    primary:= INT | ATOM '(' args ')' | '(' expr ')'

``+``/``-`` add classes of equal dimension, ``*`` is the product of
manifolds, ``X^k`` the ``k``-fold product.  An integer literal is that many
points (a dimension-0 class); the literal ``0`` also serves as the zero of
any dimension, so ``0 - CP(2)`` is ``-[CP^2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .chern import (
    ChernVector,
    add,
    cp_chern,
    curve_chern,
    milnor_hypersurface_chern,
    point,
    product,
    scale,
)
from .errors import DimensionMismatch
from .toric import blcp_chern, blsub_chern
from .varieties import BlCP, BlSub, GoodVariety

ATOMS = {"CP": 1, "H": 2, "Sigma": 1, "BlCP": 2, "BlSub": 2}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Atom:
    kind: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ClassExpr"
    right: "ClassExpr"


@dataclass(frozen=True)
class Pow:
    base: "ClassExpr"
    exponent: int


ClassExpr = Union[Num, Atom, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[_Tok]:
    tokens, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Tok(kind, m.group(kind), *_position(text, start)))
        pos = m.end()
    tokens.append(_Tok("eof", "", *_position(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text:
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {text!r}, got {got}", tok.line, tok.col)
        return tok

    def integer(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected an integer, got {got}", tok.line, tok.col)
        return int(tok.text)

    def parse(self) -> ClassExpr:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return node

    def expr(self) -> ClassExpr:
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ClassExpr:
        node = self.factor()
        while self.peek().text == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> ClassExpr:
        node = self.primary()
        while self.peek().text == "^":
            self.take()
            tok = self.peek()
            k = self.integer()
            if k < 1:
                raise ParseError("exponent must be >= 1", tok.line, tok.col)
            node = Pow(node, k)
        return node

    def primary(self) -> ClassExpr:
        tok = self.take()
        if tok.kind == "int":
            return Num(int(tok.text))
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            if tok.text not in ATOMS:
                raise ParseError(f"unknown atom {tok.text!r}", tok.line, tok.col)
            self.expect("(")
            args = [self.integer()]
            while self.peek().text == ",":
                self.take()
                args.append(self.integer())
            close = self.expect(")")
            if len(args) != ATOMS[tok.text]:
                raise ParseError(
                    f"{tok.text} takes {ATOMS[tok.text]} argument(s), got {len(args)}", close.line, close.col
                )
            return Atom(tok.text, tuple(args))
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected a number, variety or '(', got {got}", tok.line, tok.col)


def parse_class_expr(text: str) -> ClassExpr:
    return _Parser(text).parse()


_PREC = {"+": 1, "-": 1, "*": 2}


def pretty(node: ClassExpr) -> str:
    """Canonical text that parses back to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Atom):
        return f"{node.kind}({','.join(map(str, node.args))})"
    if isinstance(node, Pow):
        base = pretty(node.base)
        if isinstance(node.base, BinOp):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    prec = _PREC[node.op]
    left = pretty(node.left)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] < prec:
        left = f"({left})"
    right = pretty(node.right)
    if isinstance(node.right, BinOp) and _PREC[node.right.op] <= prec:
        right = f"({right})"
    sep = "*" if node.op == "*" else f" {node.op} "
    return f"{left}{sep}{right}"


def atom_chern(kind: str, args: tuple[int, ...]) -> ChernVector:
    try:
        if kind == "CP":
            return cp_chern(args[0])
        if kind == "H":
            return milnor_hypersurface_chern(*args)
        if kind == "Sigma":
            return curve_chern(args[0])
        if kind == "BlCP":
            return blcp_chern(*BlCP(*args).args)
        if kind == "BlSub":
            return blsub_chern(*BlSub(*args).args)
    except ValueError as exc:
        raise DimensionMismatch(str(exc)) from None
    raise ValueError(f"unknown atom {kind!r}")


def _is_zero_scalar(v: ChernVector) -> bool:
    return v.dim == 0 and v.is_zero()


def evaluate(node: ClassExpr) -> ChernVector:
    if isinstance(node, Num):
        return point(node.value)
    if isinstance(node, Atom):
        return atom_chern(node.kind, node.args)
    if isinstance(node, Pow):
        base = evaluate(node.base)
        out = base
        for _ in range(node.exponent - 1):
            out = product(out, base)
        return out
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "*":
        return product(left, right)
    if node.op == "-":
        right = scale(-1, right)
    if _is_zero_scalar(left):
        return right
    if _is_zero_scalar(right):
        return left
    if left.dim != right.dim:
        raise DimensionMismatch(f"cannot {'add' if node.op == '+' else 'subtract'} classes of dimension {left.dim} and {right.dim}")
    return add(left, right)


def evaluate_text(text: str) -> ChernVector:
    return evaluate(parse_class_expr(text))


def parse_product_text(text: str) -> list[tuple[str, tuple]]:
    """Parse ``"CP(1) * Sigma(3)"`` into ``[(kind, args), ...]``.

    Only ``*`` and ``^`` are allowed.  ``Toric(name)`` factors are passed
    through by name for the caller to resolve.
    """
    factors: list[tuple[str, tuple]] = []

    def walk(node: ClassExpr) -> None:
        if isinstance(node, Atom):
            factors.append((node.kind, node.args))
        elif isinstance(node, Pow):
            for _ in range(node.exponent):
                walk(node.base)
        elif isinstance(node, BinOp) and node.op == "*":
            walk(node.left)
            walk(node.right)
        else:
            raise ParseError(f"not a product of varieties: {pretty(node)}", 1, 1)

    rest = []
    for piece in text.split("*"):
        m = re.fullmatch(r"\s*Toric\(\s*([A-Za-z_0-9.\-]+)\s*\)\s*", piece)
        if m:
            factors.append(("Toric", (m.group(1),)))
        else:
            rest.append(piece)
    if rest:
        walk(parse_class_expr("*".join(rest)))
    return factors


def product_varieties(text: str) -> list[GoodVariety]:
    return [GoodVariety(kind, args) for kind, args in parse_product_text(text)]
