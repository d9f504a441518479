# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Benchmark element expressions.

``g`` is the generator of a cyclic group, ``g2`` the second canonical
generator; ``g(1)`` and ``g2(1)`` pin the degree. ``*`` is the cup product
between classes and scalar multiplication when one side is an integer.
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

from cohomology_engine.errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<gen>g(?P<index>\d+)?)|(?P<int>\d+)|(?P<op>[-+*()]))")


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class Generator:
    index: Optional[int]
    degree: Optional[int]
    position: int = 0

    def __str__(self) -> str:
        name = "g" if self.index is None else f"g{self.index}"
        return name if self.degree is None else f"{name}({self.degree})"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Number, Generator, Neg, BinOp]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("Unexpected character", text, len(text) - len(text[pos:].lstrip()))
            start = m.end() - len(m.group(0).lstrip())
            self.tokens.append((m, start))
            pos = m.end()
        self.i = 0

    def _peek(self, kind: str, value: Optional[str] = None) -> bool:
        if self.i >= len(self.tokens):
            return False
        m, _ = self.tokens[self.i]
        if m.group(kind) is None:
            return False
        return value is None or m.group(kind) == value

    def _position(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def _take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect_op(self, value: str) -> None:
        if not self._peek("op", value):
            raise ParseError(f"Expected {value!r}", self.text, self._position())
        self.i += 1

    def parse(self) -> Node:
        if not self.tokens:
            raise ParseError("Empty expression", self.text, 0)
        node = self._sum()
        if self.i < len(self.tokens):
            raise ParseError("Unexpected trailing input", self.text, self._position())
        return node

    def _sum(self) -> Node:
        node = self._product()
        while self._peek("op", "+") or self._peek("op", "-"):
            op = self._take()[0].group("op")
            node = BinOp(op, node, self._product())
        return node

    def _product(self) -> Node:
        node = self._unary()
        while self._peek("op", "*"):
            self.i += 1
            node = BinOp("*", node, self._unary())
        return node

    def _unary(self) -> Node:
        if self._peek("op", "-"):
            self.i += 1
            return Neg(self._unary())
        if self._peek("op", "+"):
            self.i += 1
            return self._unary()
        return self._atom()

    def _atom(self) -> Node:
        if self._peek("int"):
            m, _ = self._take()
            return Number(int(m.group("int")))
        if self._peek("gen"):
            m, start = self._take()
            index = int(m.group("index")) if m.group("index") else None
            if index == 0:
                raise ParseError("Generators are numbered from 1", self.text, start)
            degree = self._degree_suffix()
            return Generator(index, degree, start)
        if self._peek("op", "("):
            self.i += 1
            node = self._sum()
            self._expect_op(")")
            return node
        raise ParseError("Expected a generator, integer or '('", self.text, self._position())

    def _degree_suffix(self) -> Optional[int]:
        # g(k) only when the parentheses hold a bare integer
        if (self._peek("op", "(") and self.i + 2 < len(self.tokens)
                and self.tokens[self.i + 1][0].group("int") is not None
                and self.tokens[self.i + 2][0].group("op") == ")"):
            degree = int(self.tokens[self.i + 1][0].group("int"))
            self.i += 3
            return degree
        return None


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


def render(node: Node) -> str:
    if isinstance(node, Number):
        return str(node.value)
    if isinstance(node, Generator):
        return str(node)
    if isinstance(node, Neg):
        return f"-{render(node.operand)}"
    return f"({render(node.left)} {node.op} {render(node.right)})"
