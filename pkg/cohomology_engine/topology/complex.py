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

"""Cell complexes as boundary-matrix data, and their (co)homology.

Cohomology with coefficients in a finitely generated group G is computed on
cochains directly: a degree-n cochain is a vector with one block of G
coordinates per n-cell (cell-major), the coboundary is ``∂ᵀ ⊗ I``, and
torsion in G enters as an extra relation lattice. The result carries one
representative cocycle per canonical generator and is cross-checked against
the universal-coefficient assembly.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from cohomology_engine.algebra.abgroup import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    Subquotient,
    direct_sum,
    ext_group,
    hom_group,
    tensor,
)
from cohomology_engine.algebra.intmat import (
    IntMatrix,
    block_diag,
    hstack,
    kernel_basis,
    kron,
    rank_mod_p,
    smith,
    vstack,
)
from cohomology_engine.errors import ChainComplexError, ChainMapError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellComplex:
    """Cells per dimension and boundary matrices; ``boundaries[k - 1]`` is ∂_k."""

    cells: Tuple[int, ...]
    boundaries: Tuple[IntMatrix, ...] = ()
    basepoint: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if any(c < 0 for c in self.cells):
            raise ChainComplexError(f"Negative cell count in {self.cells}")
        expected = max(len(self.cells) - 1, 0)
        if len(self.boundaries) != expected:
            raise ChainComplexError(f"Expected {expected} boundary matrices, got {len(self.boundaries)}")
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.cells[k - 1], self.cells[k]):
                raise ChainComplexError(
                    f"∂_{k} has shape {d.shape}, expected {(self.cells[k - 1], self.cells[k])}"
                )
        for k in range(2, len(self.cells)):
            product = self.boundaries[k - 2] @ self.boundaries[k - 1]
            for i in range(product.rows):
                for j in range(product.cols):
                    if product[i, j]:
                        raise ChainComplexError(f"∂_{k - 1}∂_{k}[{i}][{j}] = {product[i, j]}, expected 0")
        if self.basepoint is not None and not 0 <= self.basepoint < self.cell_count(0):
            raise ChainComplexError(f"Basepoint {self.basepoint} is not a 0-cell")

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def cell_count(self, n: int) -> int:
        return self.cells[n] if 0 <= n < len(self.cells) else 0

    def boundary(self, n: int) -> IntMatrix:
        """∂_n as a ``cells[n-1] x cells[n]`` matrix, zero-sized outside the complex."""
        if 1 <= n < len(self.cells):
            return self.boundaries[n - 1]
        return IntMatrix.zeros(self.cell_count(n - 1), self.cell_count(n))

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"cells": list(self.cells), "boundaries": [b.to_json() for b in self.boundaries]}
        if self.basepoint is not None:
            data["basepoint"] = self.basepoint
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CellComplex":
        try:
            cells = [int(c) for c in data["cells"]]
            boundaries = [IntMatrix.from_json(b) for b in data.get("boundaries", [])]
        except (KeyError, TypeError) as e:
            raise ChainComplexError(f"Malformed complex JSON: {e}")
        return cls(tuple(cells), tuple(boundaries), data.get("basepoint"))


def load_complex(path: str) -> CellComplex:
    with open(path, "r", encoding="utf-8") as f:
        return CellComplex.from_json(json.load(f))


class _Augmented:
    """Chain data of X with an extra degree -1 cell and ∂_0 the augmentation."""

    def __init__(self, complex_: CellComplex):
        self.complex = complex_

    def cell_count(self, n: int) -> int:
        return 1 if n == -1 else self.complex.cell_count(n)

    def boundary(self, n: int) -> IntMatrix:
        if n == 0:
            return IntMatrix.from_rows([[1] * self.complex.cell_count(0)], cols=self.complex.cell_count(0))
        return IntMatrix.zeros(self.cell_count(n - 1), self.cell_count(n)) if n < 0 else self.complex.boundary(n)


def _chains(x: CellComplex, reduced: bool):
    if not reduced:
        return x
    if x.basepoint is None:
        raise ValueError("Reduced cohomology needs a pointed complex")
    return _Augmented(x)


def _homology(chains, n: int) -> FgAbGroup:
    incoming = smith(chains.boundary(n + 1))
    outgoing_rank = smith(chains.boundary(n)).rank
    free = chains.cell_count(n) - outgoing_rank - incoming.rank
    return FgAbGroup(free, tuple(d for d in incoming.nonzero_diagonal if d > 1))


def homology(x: CellComplex, n: int) -> FgAbGroup:
    """Integral homology H_n(X) from the Smith data of the boundaries."""
    return _homology(x, n)


def reduced_homology(x: CellComplex, n: int) -> FgAbGroup:
    return _homology(_chains(x, True), n)


def euler_characteristic(x: CellComplex) -> int:
    return sum((-1) ** n * c for n, c in enumerate(x.cells))


def betti_numbers(x: CellComplex) -> List[int]:
    return [homology(x, n).free_rank for n in range(len(x.cells))]


def universal_coefficients(x: CellComplex, n: int, coefficients: FgAbGroup, reduced: bool = False) -> FgAbGroup:
    """``Hom(H_n, G) + Ext(H_{n-1}, G)``."""
    chains = _chains(x, reduced)
    return direct_sum([
        hom_group(_homology(chains, n), coefficients),
        ext_group(_homology(chains, n - 1), coefficients),
    ])


@dataclass(frozen=True)
class CohomologyResult:
    group: FgAbGroup
    degree: int
    coefficients: FgAbGroup
    representatives: Tuple[Tuple[int, ...], ...]
    cochain_rank: int
    reduced: bool = False
    subquotient: Subquotient = field(default=None, compare=False, repr=False)

    def classify(self, cochain: Sequence[int]) -> GroupElement:
        """Class of a cocycle given in cell-major coordinates."""
        try:
            return self.subquotient.element(cochain)
        except ValueError:
            raise ValueError(f"Cochain is not a degree-{self.degree} cocycle")

    def is_cocycle(self, cochain: Sequence[int]) -> bool:
        return self.subquotient.contains(cochain)

    def cell_values(self, cochain: Sequence[int]) -> List[GroupElement]:
        g = self.coefficients.ngens
        return [self.coefficients.element(cochain[i * g:(i + 1) * g]) for i in range(self.cochain_rank)]


def _reduce_cochain(vector: Sequence[int], coefficients: FgAbGroup) -> Tuple[int, ...]:
    orders = coefficients.orders * (len(vector) // max(coefficients.ngens, 1))
    return tuple(v % d if d else v for v, d in zip(vector, orders))


@lru_cache(maxsize=2048)
def cohomology(x: CellComplex, n: int, coefficients: FgAbGroup, reduced: bool = False) -> CohomologyResult:
    """H^n(X; G), or the reduced group when ``reduced`` is set."""
    chains = _chains(x, reduced)
    g = coefficients.ngens
    relations = coefficients.relation_matrix()
    c_prev, c_n, c_next = chains.cell_count(n - 1), chains.cell_count(n), chains.cell_count(n + 1)
    delta_n = kron(chains.boundary(n + 1).transpose(), IntMatrix.identity(g))
    delta_prev = kron(chains.boundary(n).transpose(), IntMatrix.identity(g))
    logger.debug("H^%d with %s coefficients: cochain ranks %d, %d, %d", n, coefficients, c_prev, c_n, c_next)

    stacked = hstack([delta_n, kron(IntMatrix.identity(c_next), relations)], rows=c_next * g)
    cocycles = kernel_basis(stacked).select_rows(range(c_n * g))
    trivial = hstack([delta_prev, kron(IntMatrix.identity(c_n), relations)], rows=c_n * g)
    sq = Subquotient(cocycles, trivial)

    expected = universal_coefficients(x, n, coefficients, reduced)
    if sq.group != expected:
        raise RuntimeError(
            f"Cochain-level H^{n} = {sq.group} disagrees with universal coefficients {expected}"
        )
    reps = tuple(_reduce_cochain(v, coefficients) for v in sq.generator_vectors())
    return CohomologyResult(sq.group, n, coefficients, reps, c_n, reduced, sq)


def reduced_cohomology(x: CellComplex, n: int, coefficients: FgAbGroup) -> FgAbGroup:
    return cohomology(x, n, coefficients, reduced=True).group


def cohomology_direct_mod_p(x: CellComplex, n: int, p: int) -> int:
    """dim H^n(X; Z/p) from ranks of the boundaries over Z/p alone."""
    if not isprime(p):
        raise ValueError(f"cohomology_direct_mod_p requires a prime, got {p}")
    return x.cell_count(n) - rank_mod_p(x.boundary(n + 1), p) - rank_mod_p(x.boundary(n), p)


def dimension_mod_p(group: FgAbGroup, p: int) -> int:
    return tensor(group, FgAbGroup.cyclic(p)).ngens


def cochain_hom(source: CohomologyResult, target: CohomologyResult, matrix: IntMatrix) -> GroupHom:
    """Hom between cohomology groups induced by a cochain map ``matrix``."""
    images = [target.classify(matrix.apply(rep)) for rep in source.representatives]
    return GroupHom.from_images(source.group, target.group, images)


# -- maps --------------------------------------------------------------------


@dataclass(frozen=True)
class CellularMap:
    """Chain map; ``components[n]`` sends n-chains of ``source`` to n-chains of ``target``."""

    source: CellComplex
    target: CellComplex
    components: Tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(self.source.cells):
            raise ChainMapError(f"Expected {len(self.source.cells)} components, got {len(self.components)}")
        for n, f in enumerate(self.components):
            if f.shape != (self.target.cell_count(n), self.source.cell_count(n)):
                raise ChainMapError(f"Component {n} has shape {f.shape}")
        for n in range(1, len(self.components)):
            lhs = self.target.boundary(n) @ self.components[n]
            rhs = self.components[n - 1] @ self.source.boundary(n)
            if lhs != rhs:
                raise ChainMapError(f"Chain-map condition fails in dimension {n}")

    def component(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.components):
            return self.components[n]
        if n == -1:
            return IntMatrix.identity(1)
        return IntMatrix.zeros(self.target.cell_count(n), self.source.cell_count(n))

    def preserves_augmentation(self) -> bool:
        f0 = self.component(0)
        return all(sum(col) == 1 for col in f0.columns())


def induced_map(f: CellularMap, n: int, coefficients: FgAbGroup, reduced: bool = False) -> GroupHom:
    """``f^*: H^n(target; G) -> H^n(source; G)``."""
    if reduced and not f.preserves_augmentation():
        raise ChainMapError("Map does not preserve the augmentation; reduced f^* is undefined")
    src = cohomology(f.target, n, coefficients, reduced)
    dst = cohomology(f.source, n, coefficients, reduced)
    matrix = kron(f.component(n).transpose(), IntMatrix.identity(coefficients.ngens))
    return cochain_hom(src, dst, matrix)


def identity_map(x: CellComplex) -> CellularMap:
    return CellularMap(x, x, tuple(IntMatrix.identity(c) for c in x.cells))


POINT = CellComplex((1,), (), 0)


def basepoint_inclusion(x: CellComplex) -> CellularMap:
    if x.basepoint is None:
        raise ValueError("Complex has no basepoint")
    col = [1 if i == x.basepoint else 0 for i in range(x.cell_count(0))]
    return CellularMap(POINT, x, (IntMatrix.from_columns([col], rows=x.cell_count(0)),))


def skeleton(x: CellComplex, k: int) -> CellComplex:
    if k < 0:
        raise ValueError(f"Skeleton dimension must be >= 0, got {k}")
    return CellComplex(x.cells[:k + 1], x.boundaries[:k], x.basepoint)


def skeleton_inclusion(x: CellComplex, k: int) -> CellularMap:
    sub = skeleton(x, k)
    return CellularMap(sub, x, tuple(IntMatrix.identity(c) for c in sub.cells))


# -- constructions ------------------------------------------------------------


def _trim(cells: List[int], boundaries: List[IntMatrix], basepoint: Optional[int]) -> CellComplex:
    while len(cells) > 1 and cells[-1] == 0:
        cells.pop()
        boundaries.pop()
    return CellComplex(tuple(cells), tuple(boundaries), basepoint)


def suspension(x: CellComplex) -> CellComplex:
    """Reduced suspension: one 0-cell, then the reduced chains of X shifted up by one."""
    if x.basepoint is None:
        raise ValueError("Suspension needs a pointed complex")
    c0 = x.cell_count(0)
    others = [i for i in range(c0) if i != x.basepoint]
    cells = [1, c0 - 1] + list(x.cells[1:])
    boundaries = [IntMatrix.zeros(1, c0 - 1)]
    if x.dimension >= 1:
        boundaries.append(x.boundary(1).select_rows(others))
        boundaries.extend(x.boundaries[1:])
    return _trim(cells, boundaries, 0)


def _wedge_vertex_maps(xs: Sequence[CellComplex]) -> Tuple[int, List[List[int]]]:
    maps = []
    next_index = 1
    for x in xs:
        if x.basepoint is None:
            raise ValueError("Wedge summands must be pointed")
        vmap = []
        for v in range(x.cell_count(0)):
            if v == x.basepoint:
                vmap.append(0)
            else:
                vmap.append(next_index)
                next_index += 1
        maps.append(vmap)
    return next_index, maps


def wedge(xs: Sequence[CellComplex]) -> CellComplex:
    """Identify the basepoints of the summands; the wedge point is 0-cell 0."""
    return wedge_with_inclusions(xs)[0]


def wedge_with_inclusions(xs: Sequence[CellComplex]) -> Tuple[CellComplex, List[CellularMap]]:
    xs = list(xs)
    if not xs:
        return POINT, []
    c0, vmaps = _wedge_vertex_maps(xs)
    top = max(x.dimension for x in xs)
    cells = [c0] + [sum(x.cell_count(n) for x in xs) for n in range(1, top + 1)]
    boundaries = []
    if top >= 1:
        blocks = []
        for x, vmap in zip(xs, vmaps):
            d1 = x.boundary(1)
            rows = [[0] * d1.cols for _ in range(c0)]
            for v in range(d1.rows):
                for j in range(d1.cols):
                    rows[vmap[v]][j] += d1[v, j]
            blocks.append(IntMatrix.from_rows(rows, cols=d1.cols))
        boundaries.append(hstack(blocks, rows=c0))
        for n in range(2, top + 1):
            boundaries.append(block_diag([x.boundary(n) for x in xs]))
    w = CellComplex(tuple(cells), tuple(boundaries), 0)

    inclusions = []
    offsets = [0] * (top + 1)
    for x, vmap in zip(xs, vmaps):
        comps = [IntMatrix.from_columns([[1 if i == vmap[v] else 0 for i in range(c0)] for v in range(len(vmap))], rows=c0)]
        for n in range(1, x.dimension + 1):
            cols = []
            for j in range(x.cell_count(n)):
                col = [0] * cells[n]
                col[offsets[n] + j] = 1
                cols.append(col)
            comps.append(IntMatrix.from_columns(cols, rows=cells[n]))
        for n in range(1, top + 1):
            offsets[n] += x.cell_count(n)
        inclusions.append(CellularMap(x, w, tuple(comps)))
    return w, inclusions


def cofiber(f: CellularMap) -> CellComplex:
    """Mapping cone ``Y ∪ CX``; the cone apex is the last 0-cell and the basepoint."""
    return cofiber_with_inclusion(f)[0]


def cofiber_with_inclusion(f: CellularMap) -> Tuple[CellComplex, CellularMap]:
    x, y = f.source, f.target
    top = max(y.dimension, x.dimension + 1)
    cells = [y.cell_count(0) + 1] + [y.cell_count(n) + x.cell_count(n - 1) for n in range(1, top + 1)]
    boundaries = []
    for n in range(1, top + 1):
        if n == 1:
            bottom_right = IntMatrix.from_rows([[-1] * x.cell_count(0)], cols=x.cell_count(0))
            bottom_rows = 1
        else:
            bottom_right = -x.boundary(n - 1)
            bottom_rows = x.cell_count(n - 2)
        top_rows = hstack([y.boundary(n), f.component(n - 1)], rows=y.cell_count(n - 1))
        bottom = hstack([IntMatrix.zeros(bottom_rows, y.cell_count(n)), bottom_right], rows=bottom_rows)
        boundaries.append(vstack([top_rows, bottom], cols=cells[n]))
    cone = CellComplex(tuple(cells), tuple(boundaries), y.cell_count(0))

    comps = []
    for n in range(len(y.cells)):
        extra = cells[n] - y.cell_count(n)
        comps.append(vstack([IntMatrix.identity(y.cell_count(n)), IntMatrix.zeros(extra, y.cell_count(n))], cols=y.cell_count(n)))
    return cone, CellularMap(y, cone, tuple(comps))


def tensor_offsets(x: CellComplex, y: CellComplex) -> Tuple[Dict[Tuple[int, int], int], List[int]]:
    """Where block (p, q) starts among the (p+q)-cells of ``x ⊗ y``, and the cell counts.

    Cell ``a ⊗ b`` sits at ``offsets[(p, q)] + a * y.cell_count(q) + b``.
    """
    offsets: Dict[Tuple[int, int], int] = {}
    cells = []
    for n in range(x.dimension + y.dimension + 1):
        total = 0
        for p in range(n + 1):
            q = n - p
            offsets[(p, q)] = total
            total += x.cell_count(p) * y.cell_count(q)
        cells.append(total)
    return offsets, cells


def tensor_complex(x: CellComplex, y: CellComplex) -> CellComplex:
    """Tensor product of chain complexes, ``∂(a⊗b) = ∂a⊗b + (-1)^p a⊗∂b``."""
    top = x.dimension + y.dimension
    offsets, cells = tensor_offsets(x, y)

    boundaries = []
    for n in range(1, top + 1):
        data = [[0] * cells[n] for _ in range(cells[n - 1])]
        for p in range(n + 1):
            q = n - p
            col0 = offsets[(p, q)]
            if p >= 1:
                _place(data, offsets[(p - 1, q)], col0, kron(x.boundary(p), IntMatrix.identity(y.cell_count(q))))
            if q >= 1:
                block = kron(IntMatrix.identity(x.cell_count(p)), y.boundary(q))
                _place(data, offsets[(p, q - 1)], col0, block if p % 2 == 0 else -block)
        boundaries.append(IntMatrix.from_rows(data, cols=cells[n]))

    basepoint = None
    if x.basepoint is not None and y.basepoint is not None:
        basepoint = x.basepoint * y.cell_count(0) + y.basepoint
    return CellComplex(tuple(cells), tuple(boundaries), basepoint)


def _place(data: List[List[int]], r0: int, c0: int, block: IntMatrix) -> None:
    for i in range(block.rows):
        for j in range(block.cols):
            if block[i, j]:
                data[r0 + i][c0 + j] += block[i, j]
