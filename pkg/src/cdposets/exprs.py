"""A tiny expression language for building posets.

Grammar (whitespace-insensitive)::

    expr := chain(INT) | boolean(INT) | dual(expr) | double(expr)
          | dni(expr, INT, INT, INT)          # interval low, high, copies
          | join(expr, expr)
          | glue([expr, ...], [[INT, ...], ...])
          | dp(INT, [[INT, INT], ...], INT)   # n, intervals, copies
          | lemma2(INT, INT) | lemma3(INT)

Parse errors carry the byte offset of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .constructions import (
    dp_poset,
    glue,
    horizontal_double,
    join,
    lemma2_poset,
    lemma3_poset,
    replicate_interval,
)
from .poset import RankedPoset, boolean, chain


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME, INT, PUNCT, END
    text: str
    position: int


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "()[],":
            yield _Token("PUNCT", ch, pos)
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            yield _Token("INT", text[start:pos], start)
        elif ch.isalpha() or ch == "_":
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            yield _Token("NAME", text[start:pos], start)
        else:
            raise ExpressionError(f"unexpected character {ch!r}", pos)
    yield _Token("END", "", len(text))


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.advance()
        if tok.text != text:
            raise ExpressionError(
                f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.position
            )
        return tok

    def parse_int(self) -> int:
        tok = self.advance()
        if tok.kind != "INT":
            raise ExpressionError(
                f"expected an integer, found {tok.text or 'end of input'!r}",
                tok.position,
            )
        return int(tok.text)

    def parse_int_list(self) -> list[int]:
        self.expect("[")
        out = []
        if self.peek().text != "]":
            out.append(self.parse_int())
            while self.peek().text == ",":
                self.advance()
                out.append(self.parse_int())
        self.expect("]")
        return out

    def parse_interval_list(self) -> list[tuple[int, int]]:
        self.expect("[")
        out = []
        if self.peek().text != "]":
            while True:
                pair = self.parse_int_list()
                if len(pair) != 2:
                    raise ExpressionError(
                        f"expected an interval [low, high], found {len(pair)} entries",
                        self.peek().position,
                    )
                out.append((pair[0], pair[1]))
                if self.peek().text != ",":
                    break
                self.advance()
        self.expect("]")
        return out

    def parse_expr(self) -> Node:
        tok = self.advance()
        if tok.kind != "NAME":
            raise ExpressionError(
                f"expected a constructor name, found {tok.text or 'end of input'!r}",
                tok.position,
            )
        name = tok.text
        self.expect("(")
        if name in ("chain", "boolean", "lemma3"):
            args: tuple = (self.parse_int(),)
        elif name in ("dual", "double"):
            args = (self.parse_expr(),)
        elif name == "dni":
            inner = self.parse_expr()
            nums = [self._comma_int() for _ in range(3)]
            args = (inner, *nums)
        elif name == "join":
            left = self.parse_expr()
            self.expect(",")
            args = (left, self.parse_expr())
        elif name == "lemma2":
            first = self.parse_int()
            self.expect(",")
            args = (first, self.parse_int())
        elif name == "dp":
            n = self.parse_int()
            self.expect(",")
            intervals = self.parse_interval_list()
            self.expect(",")
            args = (n, tuple(intervals), self.parse_int())
        elif name == "glue":
            self.expect("[")
            parts = [self.parse_expr()]
            while self.peek().text == ",":
                self.advance()
                parts.append(self.parse_expr())
            self.expect("]")
            self.expect(",")
            self.expect("[")
            rank_sets = [tuple(self.parse_int_list())]
            while self.peek().text == ",":
                self.advance()
                rank_sets.append(tuple(self.parse_int_list()))
            self.expect("]")
            args = (tuple(parts), tuple(rank_sets))
        else:
            raise ExpressionError(f"unknown constructor {name!r}", tok.position)
        self.expect(")")
        return Node(name, args)

    def _comma_int(self) -> int:
        self.expect(",")
        return self.parse_int()


def parse_expression(text: str) -> Node:
    parser = _Parser(text)
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "END":
        raise ExpressionError(
            f"unexpected trailing input {trailing.text!r}", trailing.position
        )
    return node


def build_poset(node: Node, *, budget: int | None = None) -> RankedPoset:
    """Evaluate a parsed expression.  Domain errors (bad ranges, glue
    mismatches, budget) surface as the usual exceptions from the
    construction functions."""
    kind, args = node.kind, node.args
    if kind == "chain":
        return chain(args[0], budget=budget)
    if kind == "boolean":
        return boolean(args[0], budget=budget)
    if kind == "dual":
        return build_poset(args[0], budget=budget).dual()
    if kind == "double":
        return horizontal_double(build_poset(args[0], budget=budget), budget=budget)
    if kind == "dni":
        inner, low, high, copies = args
        return replicate_interval(
            build_poset(inner, budget=budget), low, high, copies, budget=budget
        )
    if kind == "join":
        return join(
            build_poset(args[0], budget=budget),
            build_poset(args[1], budget=budget),
            budget=budget,
        )
    if kind == "glue":
        parts, rank_sets = args
        if len(parts) != len(rank_sets):
            raise ValueError(
                f"glue got {len(parts)} parts but {len(rank_sets)} rank sets"
            )
        built = [build_poset(part, budget=budget) for part in parts]
        return glue(list(zip(built, rank_sets)), budget=budget)
    if kind == "dp":
        n, intervals, copies = args
        return dp_poset(n, list(intervals), copies, budget=budget)
    if kind == "lemma2":
        return lemma2_poset(args[0], args[1], budget=budget)
    if kind == "lemma3":
        return lemma3_poset(args[0], budget=budget)
    raise ValueError(f"unknown node kind {kind!r}")
