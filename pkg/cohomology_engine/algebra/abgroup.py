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

"""Finitely generated abelian groups in invariant-factor form.

A group ``Z^r + Z/d_1 + ... + Z/d_k`` (d_i | d_{i+1}, d_i >= 2) has canonical
generators ordered free first, then torsion by ascending order. Elements and
homomorphisms are coordinate vectors and matrices over those generators.
Subgroups and quotients are returned as abstract groups together with their
structure maps.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from cohomology_engine.algebra.intmat import (
    IntMatrix,
    SmithDecomposition,
    hstack,
    kernel_basis,
    smith,
    solve,
)
from cohomology_engine.errors import IllDefinedHomError, OwnerMismatchError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FgAbGroup:
    free_rank: int = 0
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")
        factors = self.invariant_factors
        for i, d in enumerate(factors):
            if d < 2:
                raise ValueError(f"Invariant factors must be >= 2, got {d}")
            if i and d % factors[i - 1]:
                raise ValueError(f"Invariant factors {factors} do not form a divisibility chain")

    # -- constructors -----------------------------------------------------

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def integers(cls, rank: int = 1) -> "FgAbGroup":
        return cls(free_rank=rank)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        """``Z/order``; order 0 gives Z and order 1 the trivial group."""
        return from_cyclic_orders([order])

    # -- structure --------------------------------------------------------

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def orders(self) -> Tuple[int, ...]:
        """Order of each canonical generator, 0 meaning infinite."""
        return (0,) * self.free_rank + self.invariant_factors

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_cyclic(self) -> bool:
        return self.ngens <= 1

    def order(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    def relation_matrix(self) -> IntMatrix:
        """Columns generate the relations among canonical generators."""
        cols = []
        for k, d in enumerate(self.invariant_factors):
            col = [0] * self.ngens
            col[self.free_rank + k] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=self.ngens)

    def reduce(self, coords: Sequence[int]) -> Tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"{self} expects {self.ngens} coordinates, got {len(coords)}")
        return tuple(int(x) % d if d else int(x) for x, d in zip(coords, self.orders))

    # -- elements ---------------------------------------------------------

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def generators(self) -> List["GroupElement"]:
        return [self.element([1 if i == k else 0 for i in range(self.ngens)]) for k in range(self.ngens)]

    def elements(self) -> Iterator["GroupElement"]:
        """Every element of a finite group, in coordinate order."""
        if not self.is_finite:
            raise ValueError(f"Cannot enumerate the infinite group {self}")
        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, tuple(coords))

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class GroupElement:
    owner: FgAbGroup
    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.owner.reduce(self.coords))

    def _check_owner(self, other: "GroupElement") -> None:
        if other.owner != self.owner:
            raise OwnerMismatchError(f"Cannot combine elements of {self.owner} and {other.owner}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_owner(other)
        return GroupElement(self.owner, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.owner, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.owner, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Presentation:
    """Canonical form of ``Z^n / span(relations)``.

    ``projection`` sends presentation coordinates to (unreduced) canonical
    coordinates; column k of ``lifts`` is a presentation vector mapping to
    canonical generator k.
    """

    group: FgAbGroup
    projection: IntMatrix
    lifts: IntMatrix

    def project(self, vector: Sequence[int]) -> GroupElement:
        return self.group.element(self.projection.apply(vector))


def from_presentation(n_generators: int, relations: IntMatrix) -> Presentation:
    if relations.rows != n_generators:
        raise ValueError(f"Relation matrix has {relations.rows} rows, expected {n_generators}")
    snf = smith(relations)
    diag = snf.diagonal
    orders = [diag[i] if i < len(diag) else 0 for i in range(n_generators)]
    free = [i for i, d in enumerate(orders) if d == 0]
    torsion = [i for i, d in enumerate(orders) if d > 1]
    keep = free + torsion
    group = FgAbGroup(len(free), tuple(orders[i] for i in torsion))
    return Presentation(
        group=group,
        projection=snf.U.select_rows(keep),
        lifts=snf.u_inv.select_columns(keep),
    )


def from_cyclic_orders(orders: Sequence[int]) -> FgAbGroup:
    """Canonical form of the direct sum of cyclic groups ``Z/o`` (0 meaning Z)."""
    return _diagonal_presentation(orders).group


def _diagonal_presentation(orders: Sequence[int]) -> Presentation:
    if any(o < 0 for o in orders):
        raise ValueError(f"Cyclic orders must be nonnegative, got {list(orders)}")
    return from_presentation(len(orders), IntMatrix.diagonal(orders))


class Subquotient:
    """The group ``(span S + span R) / span R`` inside a coordinate lattice.

    Columns of ``sub`` generate S and columns of ``rel`` generate R. The group
    is presented on the columns of S, with relations the S-combinations that
    land in span R.
    """

    def __init__(self, sub: IntMatrix, rel: IntMatrix):
        if sub.rows != rel.rows:
            raise ValueError(f"Ambient dimensions differ: {sub.rows} vs {rel.rows}")
        self.sub = sub
        self.rel = rel
        self.ambient_dim = sub.rows
        self._stacked = hstack([sub, rel], rows=sub.rows)
        self._snf: SmithDecomposition = smith(self._stacked)
        syzygies = kernel_basis(self._stacked, self._snf)
        self.presentation = from_presentation(sub.cols, syzygies.select_rows(range(sub.cols)))
        self.group = self.presentation.group

    def contains(self, vector: Sequence[int]) -> bool:
        return solve(self._stacked, vector, self._snf) is not None

    def element(self, vector: Sequence[int]) -> GroupElement:
        """Class of an ambient vector; raises ValueError when it lies outside S + R."""
        x = solve(self._stacked, vector, self._snf)
        if x is None:
            raise ValueError("Vector does not lie in the subgroup")
        return self.presentation.project(x[:self.sub.cols])

    def ambient(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """An ambient vector representing the element with the given canonical coordinates."""
        return self.sub.apply(self.presentation.lifts.apply(coords))

    def generator_vectors(self) -> List[Tuple[int, ...]]:
        return [self.sub.apply(col) for col in self.presentation.lifts.columns()]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by a matrix over canonical generators (target rows, source columns)."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"Matrix shape {self.matrix.shape} does not fit {self.source} -> {self.target}"
            )
        rows = self.matrix.to_rows()
        for i, d in enumerate(self.target.orders):
            if d:
                rows[i] = [x % d for x in rows[i]]
        for j, d in enumerate(self.source.orders):
            if not d:
                continue
            for i, e in enumerate(self.target.orders):
                x = d * rows[i][j]
                if (e and x % e) or (not e and x):
                    raise IllDefinedHomError(
                        f"Generator {j} of {self.source} has order {d} but its image does not"
                    )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, cols=self.source.ngens))

    @classmethod
    def identity(cls, group: FgAbGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    @classmethod
    def multiplication(cls, group: FgAbGroup, n: int) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.ngens).scale(n))

    @classmethod
    def from_images(cls, source: FgAbGroup, target: FgAbGroup, images: Sequence[GroupElement]) -> "GroupHom":
        """Hom sending canonical generator k of ``source`` to ``images[k]``."""
        for x in images:
            if x.owner != target:
                raise OwnerMismatchError(f"Image {x} is not an element of {target}")
        return cls(source, target, IntMatrix.from_columns([x.coords for x in images], rows=target.ngens))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.owner != self.source:
            raise OwnerMismatchError(f"{x} is not an element of {self.source}")
        return self.target.element(self.matrix.apply(x.coords))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError(f"Cannot compose {inner.target} -> ... with {self.source} -> ...")
        return GroupHom(inner.source, self.target, self.matrix @ inner.matrix)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("Cannot add homomorphisms with different source or target")
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, -self.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def eval_hom(f: GroupHom, x: GroupElement) -> GroupElement:
    return f(x)


def is_isomorphic(g: FgAbGroup, h: FgAbGroup) -> bool:
    return g == h


# -- subobjects and quotients -----------------------------------------------


def _inclusion(sq: Subquotient, ambient_group: FgAbGroup) -> GroupHom:
    columns = [ambient_group.reduce(v) for v in sq.generator_vectors()]
    return GroupHom(sq.group, ambient_group, IntMatrix.from_columns(columns, rows=ambient_group.ngens))


def kernel(f: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    """Kernel with its inclusion into the source."""
    stacked = hstack([f.matrix, f.target.relation_matrix()], rows=f.target.ngens)
    syzygies = kernel_basis(stacked)
    sub = syzygies.select_rows(range(f.source.ngens))
    sq = Subquotient(sub, f.source.relation_matrix())
    return sq.group, _inclusion(sq, f.source)


def image(f: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    """Image with its inclusion into the target."""
    sq = Subquotient(f.matrix, f.target.relation_matrix())
    return sq.group, _inclusion(sq, f.target)


def cokernel(f: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    """Cokernel with the projection from the target."""
    stacked = hstack([f.matrix, f.target.relation_matrix()], rows=f.target.ngens)
    pres = from_presentation(f.target.ngens, stacked)
    return pres.group, GroupHom(f.target, pres.group, pres.projection)


def is_subgroup(a: GroupHom, b: GroupHom) -> bool:
    """Whether the image of ``a`` lies in the image of ``b`` (both maps into the same group)."""
    if a.target != b.target:
        raise ValueError("Subgroup comparison needs a common ambient group")
    sq = Subquotient(b.matrix, b.target.relation_matrix())
    return all(sq.contains(col) for col in a.matrix.columns())


def torsion_sub(g: FgAbGroup, n: int) -> Tuple[FgAbGroup, GroupHom]:
    """``G[n]``, the elements killed by n; ``G[0] = G``."""
    if n < 0:
        raise ValueError(f"torsion_sub expects n >= 0, got {n}")
    return kernel(GroupHom.multiplication(g, n))


def quotient_by_n(g: FgAbGroup, n: int) -> Tuple[FgAbGroup, GroupHom]:
    """``G/nG``; ``G/0 = G``."""
    if n < 0:
        raise ValueError(f"quotient_by_n expects n >= 0, got {n}")
    return cokernel(GroupHom.multiplication(g, n))


# -- sums and functors -------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    summands: Tuple[FgAbGroup, ...]
    injections: Tuple[GroupHom, ...]
    projections: Tuple[GroupHom, ...]


def direct_sum_maps(groups: Sequence[FgAbGroup]) -> DirectSum:
    orders = [o for g in groups for o in g.orders]
    pres = _diagonal_presentation(orders)
    total = pres.group
    injections, projections = [], []
    offset = 0
    for g in groups:
        block = range(offset, offset + g.ngens)
        injections.append(GroupHom(g, total, pres.projection.select_columns(block)))
        projections.append(GroupHom(total, g, pres.lifts.select_rows(block)))
        offset += g.ngens
    return DirectSum(total, tuple(groups), tuple(injections), tuple(projections))


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    return from_cyclic_orders([o for g in groups for o in g.orders])


def _pairwise(g: FgAbGroup, h: FgAbGroup, rule) -> FgAbGroup:
    return from_cyclic_orders([rule(a, b) for a in g.orders for b in h.orders])


def tensor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    # Z/a ⊗ Z/b = Z/gcd(a, b), with 0 standing for Z
    return _pairwise(g, h, gcd)


def hom_group(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    def rule(a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return 1
        return gcd(a, b)

    return _pairwise(g, h, rule)


def ext_group(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    def rule(a: int, b: int) -> int:
        if a == 0:
            return 1
        if b == 0:
            return a
        return gcd(a, b)

    return _pairwise(g, h, rule)


def tor_group(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    return _pairwise(g, h, lambda a, b: 1 if a == 0 or b == 0 else gcd(a, b))


def kunneth(first: Sequence[FgAbGroup], second: Sequence[FgAbGroup], n: int) -> FgAbGroup:
    """Integral homology of a product in degree n from the homology of its factors."""
    parts = []
    for i, a in enumerate(first):
        for j, b in enumerate(second):
            if i + j == n:
                parts.append(tensor(a, b))
            elif i + j == n - 1:
                parts.append(tor_group(a, b))
    return direct_sum(parts)


def ring_modulus(g: FgAbGroup) -> int:
    """m for ``Z/m`` and 0 for Z; other groups are not coefficient rings here."""
    if g == FgAbGroup.integers():
        return 0
    if g.free_rank == 0 and len(g.invariant_factors) == 1:
        return g.invariant_factors[0]
    raise ValueError(f"Ring coefficients must be Z or Z/m, got {g}")


# -- parsing -----------------------------------------------------------------

_TERM = re.compile(r"\s*(?:(0)|Z(?:/(\d+))?(?:\^(\d+))?)\s*")


def parse_group(text: str) -> FgAbGroup:
    """Parse ``Z``, ``Z^2``, ``Z/4``, ``Z/2^3`` (three copies of Z/2) or sums joined by ``+``."""
    if not text.strip():
        raise ParseError("Empty group description", text, 0)
    orders: List[int] = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("Expected 'Z', 'Z/n' or '0'", text, pos)
        if m.group(1) is None:
            order = int(m.group(2)) if m.group(2) is not None else 0
            power = int(m.group(3)) if m.group(3) is not None else 1
            if m.group(2) is not None and order == 0:
                raise ParseError("Cyclic order must be positive", text, m.start(2))
            orders.extend([order] * power)
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise ParseError(f"Unexpected character {text[pos]!r}", text, pos)
        pos += 1
    return from_cyclic_orders(orders)
