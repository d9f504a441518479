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

"""Parser for ring presentation claims.

Accepted forms::

    Z[x]/(x^2)
    Z/2Z[x,y]/(x^3, y^2, xy + x^2)
    Z[x,y]/(2y, x^2, y^2, xy); deg x=1, deg y=2
    Z/2[x]                      (no relations)
    Z                           (no generators)
"""

import re
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from cohomology_engine.errors import ParseError
from cohomology_engine.topology.cup import Monomial, Polynomial, RingPresentation

_COEFF = re.compile(r"\s*Z(?:/(\d+)Z?)?\s*")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")
_DEG = re.compile(r"\s*deg\s+([A-Za-z][A-Za-z0-9_]*)\s*=\s*(\d+)\s*")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"Expected {ch!r}, found {found!r}", self.text, self.pos)
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def match(self, pattern: re.Pattern):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)


def _parse_coefficients(cur: _Cursor) -> int:
    m = cur.match(_COEFF)
    if not m:
        raise ParseError("Coefficient ring must be Z or Z/m", cur.text, cur.pos)
    modulus = int(m.group(1)) if m.group(1) else 0
    if modulus == 1:
        raise ParseError("Z/1 is not a coefficient ring", cur.text, m.start())
    return modulus


def _parse_generators(cur: _Cursor) -> List[str]:
    names: List[str] = []
    cur.expect("[")
    if cur.accept("]"):
        return names
    while True:
        start = cur.pos
        m = cur.match(_NAME)
        if not m:
            raise ParseError("Expected a generator name", cur.text, cur.pos)
        if m.group(0) in names:
            raise ParseError(f"Generator {m.group(0)!r} listed twice", cur.text, start)
        names.append(m.group(0))
        if cur.accept("]"):
            return names
        cur.expect(",")


def _parse_factor(cur: _Cursor, names: List[str]) -> Tuple[int, int]:
    """One ``name`` or ``name^k``; names are matched longest first."""
    cur.skip()
    for i in sorted(range(len(names)), key=lambda i: -len(names[i])):
        if cur.text.startswith(names[i], cur.pos):
            cur.pos += len(names[i])
            power = 1
            if cur.accept("^"):
                m = cur.match(_INT)
                if not m:
                    raise ParseError("Expected an exponent", cur.text, cur.pos)
                power = int(m.group(0))
            return i, power
    raise ParseError("Unknown generator", cur.text, cur.pos)


def _parse_term(cur: _Cursor, names: List[str]) -> Tuple[Monomial, int]:
    coeff = 1
    m = cur.match(_INT)
    if m:
        coeff = int(m.group(0))
        cur.accept("*")
    exponents = [0] * len(names)
    while cur.peek() and (cur.peek().isalpha()):
        i, power = _parse_factor(cur, names)
        exponents[i] += power
        cur.accept("*")
    if not m and not any(exponents):
        raise ParseError("Expected a term", cur.text, cur.pos)
    return tuple(exponents), coeff


def _parse_polynomial(cur: _Cursor, names: List[str]) -> Polynomial:
    terms: Dict[Monomial, int] = defaultdict(int)
    sign = -1 if cur.accept("-") else 1
    while True:
        mono, coeff = _parse_term(cur, names)
        terms[mono] += sign * coeff
        if cur.accept("+"):
            sign = 1
        elif cur.accept("-"):
            sign = -1
        else:
            break
    return tuple((mono, c) for mono, c in sorted(terms.items()) if c)


def _parse_relations(cur: _Cursor, names: List[str]) -> List[Polynomial]:
    relations: List[Polynomial] = []
    cur.expect("(")
    if cur.accept(")"):
        return relations
    while True:
        relations.append(_parse_polynomial(cur, names))
        if cur.accept(")"):
            return relations
        cur.expect(",")


def _parse_degrees(cur: _Cursor, names: List[str]) -> List[Optional[int]]:
    degrees: List[Optional[int]] = [None] * len(names)
    while not cur.at_end():
        if not (cur.accept(";") or cur.accept(",")):
            if cur.pos and not cur.text[cur.pos - 1].isspace():
                raise ParseError("Unexpected trailing input", cur.text, cur.pos)
        start = cur.pos
        m = cur.match(_DEG)
        if not m:
            if cur.at_end():
                break
            raise ParseError("Expected 'deg <name>=<n>'", cur.text, cur.pos)
        name, value = m.group(1), int(m.group(2))
        if name not in names:
            raise ParseError(f"Degree given for unknown generator {name!r}", cur.text, start)
        if value < 1:
            raise ParseError("Generator degrees must be positive", cur.text, start)
        degrees[names.index(name)] = value
    return degrees


def parse_presentation(text: str) -> RingPresentation:
    cur = _Cursor(text)
    modulus = _parse_coefficients(cur)
    names: List[str] = []
    relations: List[Polynomial] = []
    if cur.peek() == "[":
        names = _parse_generators(cur)
        if cur.accept("/"):
            relations = _parse_relations(cur, names)
    degrees = _parse_degrees(cur, names)
    return RingPresentation(modulus, tuple(names), tuple(degrees), tuple(relations), text.strip())
