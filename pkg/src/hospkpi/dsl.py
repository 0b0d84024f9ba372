"""Arithmetic expression language for KPI definitions.

Expressions combine named measures with ``+ - * /`` and parentheses. The
language is deliberately total: evaluation never raises, it returns either an
exact rational value or a tagged :class:`Undefined` carrying the first reason
encountered (left to right). Dashboards render those as "n/a", never as 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Mapping, Union


class DslError(ValueError):
    """Lexical or syntax error, with the byte offset where it happened."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at byte {position})")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # ident | number | op | lparen | rparen
    text: str
    position: int  # byte offset in the source


def tokenize(text: str) -> list[Token]:
    """Split into identifiers, decimal literals, operators, and parentheses."""
    tokens: list[Token] = []
    pos = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        size = len(ch.encode("utf-8"))
        if ch in " \t\r\n":
            i += 1
            pos += size
            continue
        if ch in "+-*/":
            tokens.append(Token("op", ch, pos))
            i += 1
            pos += 1
            continue
        if ch == "(":
            tokens.append(Token("lparen", ch, pos))
            i += 1
            pos += 1
            continue
        if ch == ")":
            tokens.append(Token("rparen", ch, pos))
            i += 1
            pos += 1
            continue
        if ch.isdigit():
            start_i, start_pos = i, pos
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                if i >= n or not text[i].isdigit():
                    raise DslError("digit expected after decimal point", pos + (i - start_i))
                while i < n and text[i].isdigit():
                    i += 1
            lexeme = text[start_i:i]
            pos += len(lexeme)
            tokens.append(Token("number", lexeme, start_pos))
            continue
        if ch == "_" or ("a" <= ch <= "z"):
            start_i, start_pos = i, pos
            while i < n and (text[i] == "_" or "a" <= text[i] <= "z" or text[i].isdigit()):
                i += 1
            lexeme = text[start_i:i]
            pos += len(lexeme)
            tokens.append(Token("ident", lexeme, start_pos))
            continue
        raise DslError(f"illegal character {ch!r}", pos)
    return tokens


@dataclass(frozen=True)
class Literal:
    value: Decimal


@dataclass(frozen=True)
class MeasureRef:
    name: str


@dataclass(frozen=True)
class Binary:
    op: str  # + - * /
    left: "Expression"
    right: "Expression"


Expression = Union[Literal, MeasureRef, Binary]


class _Parser:
    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.i = 0
        self.end = source_len

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token | None:
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def expr(self) -> Expression:
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "+-":
            self.next()
            node = Binary(tok.text, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.factor()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "*/":
            self.next()
            node = Binary(tok.text, node, self.factor())
        return node

    def factor(self) -> Expression:
        tok = self.next()
        if tok is None:
            raise DslError("unexpected end of expression", self.end)
        if tok.kind == "number":
            return Literal(Decimal(tok.text))
        if tok.kind == "ident":
            return MeasureRef(tok.text)
        if tok.kind == "lparen":
            node = self.expr()
            closing = self.next()
            if closing is None or closing.kind != "rparen":
                raise DslError("unbalanced parenthesis", tok.position)
            return node
        raise DslError(f"unexpected token {tok.text!r}", tok.position)


def parse_expression(tokens: list[Token], source_len: int = 0) -> Expression:
    """Parse with standard precedence (``* /`` over ``+ -``), left associative.

    Grouping parentheses direct the parse but are not kept as tree nodes;
    ``print_expression`` reinserts the minimal set needed to reparse equal.
    """
    if not tokens:
        raise DslError("empty expression", 0)
    end = source_len or (tokens[-1].position + len(tokens[-1].text))
    parser = _Parser(tokens, end)
    node = parser.expr()
    trailing = parser.peek()
    if trailing is not None:
        raise DslError(f"unexpected token {trailing.text!r}", trailing.position)
    return node


def parse_text(text: str) -> Expression:
    return parse_expression(tokenize(text), len(text.encode("utf-8")))


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def print_expression(expr: Expression) -> str:
    """Source form that reparses to a structurally identical tree."""
    if isinstance(expr, Literal):
        return str(expr.value)
    if isinstance(expr, MeasureRef):
        return expr.name
    prec = _PRECEDENCE[expr.op]

    left = print_expression(expr.left)
    if isinstance(expr.left, Binary) and _PRECEDENCE[expr.left.op] < prec:
        left = f"({left})"

    # operators are left associative, so an equal-precedence right child
    # must be parenthesized to keep its shape through a reparse
    right = print_expression(expr.right)
    if isinstance(expr.right, Binary) and _PRECEDENCE[expr.right.op] <= prec:
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def measure_names(expr: Expression) -> set[str]:
    if isinstance(expr, MeasureRef):
        return {expr.name}
    if isinstance(expr, Binary):
        return measure_names(expr.left) | measure_names(expr.right)
    return set()


@dataclass(frozen=True)
class Undefined:
    reason: str


Number = Union[int, float, Decimal, Fraction]
EvalResult = Union[Fraction, Undefined]


def evaluate(expr: Expression, ctx: Mapping[str, Number]) -> EvalResult:
    """Exact rational evaluation; total over every (expression, context) pair."""
    if isinstance(expr, Literal):
        return Fraction(expr.value)
    if isinstance(expr, MeasureRef):
        value = ctx.get(expr.name)
        if value is None:
            return Undefined(f"missing measure {expr.name}")
        return value if isinstance(value, Fraction) else Fraction(value)
    left = evaluate(expr.left, ctx)
    if isinstance(left, Undefined):
        return left
    right = evaluate(expr.right, ctx)
    if isinstance(right, Undefined):
        return right
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if right == 0:
        return Undefined("division by zero")
    return left / right


def iter_nodes(expr: Expression) -> Iterator[Expression]:
    yield expr
    if isinstance(expr, Binary):
        yield from iter_nodes(expr.left)
        yield from iter_nodes(expr.right)
