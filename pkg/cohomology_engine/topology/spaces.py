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

"""Built-in spaces: fixed cellular models, fixture triangulations and covers."""

import itertools
import json
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cohomology_engine.algebra.intmat import IntMatrix
from cohomology_engine.errors import ParseError, UnknownSpaceError, UnsupportedSpaceError
from cohomology_engine.topology.complex import (
    CellComplex,
    CellularMap,
    basepoint_inclusion,
    euler_characteristic,
    homology,
    identity_map,
    skeleton_inclusion,
    suspension,
    wedge,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet list over vertices ``0..vertices-1``.

    Simplices are stored as increasing vertex tuples, which fixes their
    orientation; the face omitting position i carries sign (-1)^i.
    """

    vertices: int
    facets: Tuple[Tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        cleaned = []
        for facet in self.facets:
            simplex = tuple(sorted(int(v) for v in facet))
            if not simplex:
                raise ValueError("Empty facet")
            if len(set(simplex)) != len(simplex):
                raise ValueError(f"Facet {list(facet)} repeats a vertex")
            if simplex[0] < 0 or simplex[-1] >= self.vertices:
                raise ValueError(f"Facet {list(facet)} uses a vertex outside 0..{self.vertices - 1}")
            cleaned.append(simplex)
        object.__setattr__(self, "facets", tuple(sorted(set(cleaned))))

    @cached_property
    def simplices(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        """All simplices grouped by dimension, each list sorted lexicographically."""
        top = max((len(f) for f in self.facets), default=0)
        faces: List[set] = [set() for _ in range(top)]
        for facet in self.facets:
            for k in range(1, len(facet) + 1):
                faces[k - 1].update(itertools.combinations(facet, k))
        return tuple(tuple(sorted(level)) for level in faces)

    @cached_property
    def _index(self) -> List[Dict[Tuple[int, ...], int]]:
        return [{s: i for i, s in enumerate(level)} for level in self.simplices]

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def count(self, n: int) -> int:
        return len(self.simplices[n]) if 0 <= n < len(self.simplices) else 0

    def index(self, simplex: Sequence[int]) -> int:
        return self._index[len(simplex) - 1][tuple(simplex)]

    def contains(self, simplex: Sequence[int]) -> bool:
        n = len(simplex) - 1
        return 0 <= n <= self.dimension and tuple(simplex) in self._index[n]

    def boundary(self, n: int) -> IntMatrix:
        rows = [[0] * self.count(n) for _ in range(self.count(n - 1))]
        if n >= 1:
            for j, simplex in enumerate(self.simplices[n]):
                for i in range(len(simplex)):
                    face = simplex[:i] + simplex[i + 1:]
                    rows[self.index(face)][j] += -1 if i % 2 else 1
        return IntMatrix.from_rows(rows, cols=self.count(n))

    @cached_property
    def cell_complex(self) -> CellComplex:
        """Simplicial chain complex, pointed at its smallest vertex."""
        cells = tuple(self.count(n) for n in range(self.dimension + 1))
        boundaries = tuple(self.boundary(n) for n in range(1, self.dimension + 1))
        return CellComplex(cells, boundaries, 0 if cells else None)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.count(n) for n in range(self.dimension + 1))

    def subcomplex(self, facets: Sequence[Sequence[int]], name: str = "") -> "SimplicialComplex":
        sub = SimplicialComplex(self.vertices, tuple(tuple(f) for f in facets), name)
        for level in sub.simplices:
            for s in level:
                if not self.contains(s):
                    raise ValueError(f"Simplex {list(s)} is not in {self.name or 'the complex'}")
        return sub

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        common = [s for level in self.simplices for s in level if other.contains(s)]
        maximal = [s for s in common if not any(set(s) < set(t) for t in common)]
        return SimplicialComplex(self.vertices, tuple(maximal), f"{self.name}∩{other.name}")

    def restriction(self, sub: "SimplicialComplex", n: int) -> IntMatrix:
        """Cochain restriction C^n(self) -> C^n(sub) on integer cochains."""
        rows = []
        for s in (sub.simplices[n] if 0 <= n <= sub.dimension else ()):
            row = [0] * self.count(n)
            row[self.index(s)] = 1
            rows.append(row)
        return IntMatrix.from_rows(rows, cols=self.count(n))

    def to_json(self) -> Dict[str, Any]:
        return {"vertices": self.vertices, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SimplicialComplex":
        try:
            return cls(int(data["vertices"]), tuple(tuple(f) for f in data["facets"]))
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed simplicial complex JSON: {e}")


def load_simplicial(path: str) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as f:
        return SimplicialComplex.from_json(json.load(f))


# -- fixtures -----------------------------------------------------------------

# Möbius–Császár torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
TORUS_FACETS = tuple(
    tuple(sorted(((i + a) % 7, (i + b) % 7, (i + c) % 7)))
    for i in range(7)
    for a, b, c in ((0, 1, 3), (0, 2, 3))
)

# Six-vertex projective plane (hemi-icosahedron), vertices renumbered from 0.
RP2_FACETS = (
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
)

# 3x3 grid on the square with the left/right edges glued straight and the
# top/bottom edges glued with a flip.
KLEIN_FACETS = (
    (0, 1, 4), (0, 3, 4), (1, 2, 5), (1, 4, 5), (0, 2, 3), (2, 3, 5),
    (3, 4, 7), (3, 6, 7), (4, 5, 8), (4, 7, 8), (3, 5, 6), (5, 6, 8),
    (2, 6, 7), (0, 2, 6), (1, 7, 8), (1, 2, 7), (0, 6, 8), (0, 1, 8),
)


def simplex_boundary(n: int) -> SimplicialComplex:
    """The n-sphere as the boundary of the (n+1)-simplex."""
    return SimplicialComplex(n + 2, tuple(itertools.combinations(range(n + 2), n + 1)), f"s{n}")


def simplicial_wedge(parts: Sequence[SimplicialComplex], name: str = "") -> SimplicialComplex:
    """Glue vertex 0 of every part; other vertices are shifted so their order is kept."""
    facets = []
    next_vertex = 1
    for part in parts:
        relabel = {0: 0}
        for v in range(1, part.vertices):
            relabel[v] = next_vertex
            next_vertex += 1
        facets.extend(tuple(relabel[v] for v in f) for f in part.facets)
    return SimplicialComplex(next_vertex, tuple(facets), name)


# -- identifiers --------------------------------------------------------------


@dataclass(frozen=True)
class SpaceId:
    kind: str
    params: Tuple[Any, ...] = ()

    def __str__(self) -> str:
        if self.kind == "sphere":
            return f"s{self.params[0]}"
        if self.kind == "rp":
            n = self.params[0]
            return f"rp{n}" if n <= 3 else f"rpN:{n}"
        if self.kind == "cp":
            return f"cp{self.params[0]}"
        if self.kind == "wedge":
            return "wedge:" + ",".join(str(p) for p in self.params)
        if self.kind == "susp":
            return f"susp:{self.params[0]}"
        return self.kind


def sphere(n: int) -> SpaceId:
    return SpaceId("sphere", (n,))


def rp(n: int) -> SpaceId:
    return SpaceId("rp", (n,))


def cp(n: int) -> SpaceId:
    return SpaceId("cp", (n,))


TORUS = SpaceId("torus")
KLEIN = SpaceId("klein")

_ATOMS = [
    (re.compile(r"s(\d+)$"), lambda m: sphere(int(m.group(1)))),
    (re.compile(r"rpN:(\d+)$"), lambda m: rp(int(m.group(1)))),
    (re.compile(r"rp(\d+)$"), lambda m: rp(int(m.group(1)))),
    (re.compile(r"cp(\d+)$"), lambda m: cp(int(m.group(1)))),
    (re.compile(r"torus$"), lambda m: TORUS),
    (re.compile(r"klein$"), lambda m: KLEIN),
]


def parse_space(text: str) -> SpaceId:
    """Parse CLI space names such as ``s2``, ``rpN:5``, ``wedge:s2,s1,s1`` or ``susp:torus``."""
    return _parse_space(text, text, 0)


def _parse_space(full: str, text: str, offset: int) -> SpaceId:
    stripped = text.strip()
    offset += len(text) - len(text.lstrip())
    if not stripped:
        raise ParseError("Missing space name", full, offset)
    if stripped.startswith("susp:"):
        return SpaceId("susp", (_parse_space(full, stripped[5:], offset + 5),))
    if stripped.startswith("wedge:"):
        parts, pos = [], offset + 6
        for piece in stripped[6:].split(","):
            parts.append(_parse_space(full, piece, pos))
            pos += len(piece) + 1
        return SpaceId("wedge", tuple(parts))
    for pattern, build in _ATOMS:
        m = pattern.match(stripped)
        if m:
            space = build(m)
            if space.kind == "rp" and space.params[0] < 1:
                raise ParseError("Projective spaces start at dimension 1", full, offset)
            return space
    raise UnknownSpaceError(f"Unknown space {stripped!r} (at position {offset} in {full!r})")


CATALOG = (
    "s0", "s1", "s2", "s3", "s4", "torus", "klein", "rp2", "rp3", "rpN:4", "cp2",
    "wedge:s2,s1,s1", "susp:torus",
)


def catalog() -> List[SpaceId]:
    return [parse_space(name) for name in CATALOG]


# -- models -------------------------------------------------------------------


def _zero_boundaries(cells: Sequence[int]) -> Tuple[IntMatrix, ...]:
    return tuple(IntMatrix.zeros(cells[k - 1], cells[k]) for k in range(1, len(cells)))


@lru_cache(maxsize=None)
def cellular(space: SpaceId) -> CellComplex:
    """The fixed CW model of a catalog space, pointed at 0-cell 0."""
    kind = space.kind
    if kind == "sphere":
        n = space.params[0]
        if n == 0:
            return CellComplex((2,), (), 0)
        cells = (1,) + (0,) * (n - 1) + (1,)
        return CellComplex(cells, _zero_boundaries(cells), 0)
    if kind == "torus":
        return CellComplex((1, 2, 1), _zero_boundaries((1, 2, 1)), 0)
    if kind == "klein":
        # 1-cells ordered (l2, l1); the word l1 l2 l1 l2^-1 abelianizes to 2*l1
        return CellComplex((1, 2, 1), (IntMatrix.zeros(1, 2), IntMatrix.from_rows([[0], [2]])), 0)
    if kind == "rp":
        n = space.params[0]
        boundaries = tuple(IntMatrix.from_rows([[2 if k % 2 == 0 else 0]]) for k in range(1, n + 1))
        return CellComplex((1,) * (n + 1), boundaries, 0)
    if kind == "cp":
        n = space.params[0]
        cells = tuple(1 if k % 2 == 0 else 0 for k in range(2 * n + 1))
        return CellComplex(cells, _zero_boundaries(cells), 0)
    if kind == "wedge":
        return wedge([cellular(p) for p in space.params])
    if kind == "susp":
        return suspension(cellular(space.params[0]))
    raise UnknownSpaceError(f"Unknown space {space}")


@lru_cache(maxsize=None)
def simplicial(space: SpaceId) -> SimplicialComplex:
    """Fixture triangulation, checked against the cellular model when loaded."""
    kind = space.kind
    if kind == "sphere":
        result = simplex_boundary(space.params[0])
    elif kind == "torus":
        result = SimplicialComplex(7, TORUS_FACETS, "torus")
    elif kind == "rp" and space.params[0] == 2:
        result = SimplicialComplex(6, RP2_FACETS, "rp2")
    elif kind == "klein":
        result = SimplicialComplex(9, KLEIN_FACETS, "klein")
    elif kind == "wedge":
        result = simplicial_wedge([simplicial(p) for p in space.params], str(space))
    else:
        raise UnsupportedSpaceError(f"No triangulation is available for {space}")
    _validate_fixture(space, result)
    return result


def _validate_fixture(space: SpaceId, fixture: SimplicialComplex) -> None:
    model = cellular(space)
    if fixture.euler_characteristic() != euler_characteristic(model):
        raise RuntimeError(f"Triangulation of {space} has the wrong Euler characteristic")
    for n in range(max(fixture.dimension, model.dimension) + 1):
        if homology(fixture.cell_complex, n) != homology(model, n):
            raise RuntimeError(f"Triangulation of {space} disagrees with the cellular model in H_{n}")
    logger.debug("Validated triangulation of %s", space)


def covering_pair(space: SpaceId) -> Tuple[SimplicialComplex, SimplicialComplex]:
    """Two subcomplexes of ``simplicial(space)`` whose union is the whole fixture."""
    x = simplicial(space)
    if space == sphere(1):
        # two arcs meeting in the points 0 and 2
        a, b = [(0, 1), (1, 2)], [(0, 2)]
    elif space == sphere(2):
        # two disks meeting in the circle 0-2-1-3
        a, b = [(0, 1, 2), (0, 1, 3)], [(0, 2, 3), (1, 2, 3)]
    elif space == TORUS:
        # closed star of vertex 4 and its complement, meeting in a hexagon
        a = [f for f in x.facets if 4 in f]
        b = [f for f in x.facets if 4 not in f]
    else:
        raise UnsupportedSpaceError(f"No covering pair is available for {space}")
    return x.subcomplex(a, f"{space}.A"), x.subcomplex(b, f"{space}.B")


@dataclass(frozen=True)
class Skeleton:
    complex: CellComplex
    stable_below: int


def rp_infinity_skeleton(n: int) -> Skeleton:
    """``RP^n`` standing in for ``RP^∞``; cohomology agrees in degrees below n."""
    return Skeleton(cellular(rp(n)), n)


def sphere_degree_map(n: int, degree: int) -> CellularMap:
    """Self-map of the minimal n-sphere of the given degree."""
    if n < 1:
        raise ValueError("Degree maps need n >= 1")
    s = cellular(sphere(n))
    comps = [IntMatrix.identity(1)] + [IntMatrix.zeros(0, 0)] * (n - 1) + [IntMatrix.from_rows([[degree]])]
    return CellularMap(s, s, tuple(comps))


def catalog_maps(space: SpaceId) -> List[Tuple[str, CellularMap]]:
    """Cellular maps into ``cellular(space)`` used by the exactness checks."""
    x = cellular(space)
    maps = [("identity", identity_map(x)), ("basepoint", basepoint_inclusion(x))]
    for k in range(x.dimension):
        maps.append((f"skeleton{k}", skeleton_inclusion(x, k)))
    if space.kind == "sphere" and space.params[0] >= 1:
        maps.append(("degree2", sphere_degree_map(space.params[0], 2)))
    return maps
