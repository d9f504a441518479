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

"""Cup products and cohomology rings over Z and Z/m.

Products are computed on simplicial cochains with the Alexander–Whitney
formula and recorded as structure constants between the canonical
generators of each degree.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from cohomology_engine.algebra.abgroup import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    from_presentation,
)
from cohomology_engine.algebra.intmat import IntMatrix
from cohomology_engine.errors import IllDefinedHomError
from cohomology_engine.topology.complex import cohomology
from cohomology_engine.topology.spaces import SimplicialComplex

logger = logging.getLogger(__name__)


def coefficient_group(modulus: int) -> FgAbGroup:
    if modulus == 1 or modulus < 0:
        raise ValueError(f"Coefficient modulus must be 0 or >= 2, got {modulus}")
    return FgAbGroup.integers() if modulus == 0 else FgAbGroup.cyclic(modulus)


def _render_ring(modulus: int) -> str:
    return "Z" if modulus == 0 else f"Z/{modulus}"


# -- cochains -----------------------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """Integer (modulus 0) or Z/m valued function on the simplices of one degree."""

    complex: SimplicialComplex
    degree: int
    modulus: int
    values: Tuple[int, ...]

    def __post_init__(self):
        expected = self.complex.count(self.degree)
        if len(self.values) != expected:
            raise ValueError(f"Degree-{self.degree} cochain needs {expected} values, got {len(self.values)}")
        if self.modulus:
            object.__setattr__(self, "values", tuple(int(v) % self.modulus for v in self.values))
        else:
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def _check(self, other: "Cochain") -> None:
        if other.complex != self.complex or other.modulus != self.modulus:
            raise ValueError("Cochains live on different complexes or coefficient rings")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError(f"Cannot add cochains of degrees {self.degree} and {other.degree}")
        return Cochain(self.complex, self.degree, self.modulus, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, self.modulus, tuple(-a for a in self.values))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.complex, self.degree, self.modulus, tuple(k * a for a in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def value(self, simplex: Sequence[int]) -> int:
        return self.values[self.complex.index(simplex)]


def zero_cochain(x: SimplicialComplex, degree: int, modulus: int = 0) -> Cochain:
    return Cochain(x, degree, modulus, (0,) * x.count(degree))


def unit_cochain(x: SimplicialComplex, modulus: int = 0) -> Cochain:
    """The degree-0 cochain with value 1 on every vertex."""
    return Cochain(x, 0, modulus, (1,) * x.count(0))


def random_cochain(x: SimplicialComplex, degree: int, modulus: int, rng, low: int = -3, high: int = 3) -> Cochain:
    """Random cochain from a numpy Generator."""
    values = rng.integers(low, high + 1, size=x.count(degree))
    return Cochain(x, degree, modulus, tuple(int(v) for v in values))


def coboundary(alpha: Cochain) -> Cochain:
    x = alpha.complex
    values = x.boundary(alpha.degree + 1).transpose().apply(alpha.values)
    return Cochain(x, alpha.degree + 1, alpha.modulus, values)


def aw_cup(alpha: Cochain, beta: Cochain) -> Cochain:
    """Alexander–Whitney product: ``(α⌣β)(v0..v_{p+q}) = α(v0..vp)·β(vp..v_{p+q})``."""
    alpha._check(beta)
    x = alpha.complex
    p, q = alpha.degree, beta.degree
    n = p + q
    values = []
    for simplex in (x.simplices[n] if n <= x.dimension else ()):
        values.append(alpha.value(simplex[:p + 1]) * beta.value(simplex[p:]))
    return Cochain(x, n, alpha.modulus, tuple(values))


# -- graded rings -------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousElement:
    degree: int
    element: GroupElement

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.element.coords

    def __add__(self, other: "HomogeneousElement") -> "HomogeneousElement":
        if other.degree != self.degree:
            raise ValueError(f"Cannot add elements of degrees {self.degree} and {other.degree}")
        return HomogeneousElement(self.degree, self.element + other.element)

    def __neg__(self) -> "HomogeneousElement":
        return HomogeneousElement(self.degree, -self.element)

    def __sub__(self, other: "HomogeneousElement") -> "HomogeneousElement":
        return self + (-other)

    def scale(self, k: int) -> "HomogeneousElement":
        return HomogeneousElement(self.degree, k * self.element)

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def __str__(self) -> str:
        return f"{self.element} in degree {self.degree}"


StructureKey = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True, eq=False)
class GradedRing:
    """Cohomology ring truncated at ``max_degree``.

    ``constants[((p, i), (q, j))]`` holds the coordinates of the product of
    generator i in degree p with generator j in degree q.
    """

    modulus: int
    max_degree: int
    groups: Tuple[FgAbGroup, ...]
    constants: Dict[StructureKey, Tuple[int, ...]]
    unit_coords: Tuple[int, ...]
    representatives: Optional[Tuple[Tuple[Cochain, ...], ...]] = None
    source: str = "simplicial"

    def group(self, degree: int) -> FgAbGroup:
        if 0 <= degree <= self.max_degree:
            return self.groups[degree]
        return FgAbGroup.trivial()

    def element(self, degree: int, coords: Sequence[int]) -> HomogeneousElement:
        return HomogeneousElement(degree, self.group(degree).element(coords))

    def zero(self, degree: int) -> HomogeneousElement:
        return HomogeneousElement(degree, self.group(degree).zero())

    def unit(self) -> HomogeneousElement:
        return self.element(0, self.unit_coords)

    def generator(self, degree: int, index: int) -> HomogeneousElement:
        group = self.group(degree)
        if not 0 <= index < group.ngens:
            raise IndexError(f"H^{degree} = {group} has no generator {index + 1}")
        return HomogeneousElement(degree, group.generators()[index])

    def generator_label(self, degree: int, index: int) -> str:
        if self.group(degree).ngens == 1:
            return f"g({degree})"
        return f"g{index + 1}({degree})"

    def multiply(self, x: HomogeneousElement, y: HomogeneousElement) -> HomogeneousElement:
        p, q = x.degree, y.degree
        target = self.group(p + q)
        acc = [0] * target.ngens
        if target.ngens:
            for i, a in enumerate(x.coords):
                if not a:
                    continue
                for j, b in enumerate(y.coords):
                    if not b:
                        continue
                    c = self.constants[((p, i), (q, j))]
                    for k, v in enumerate(c):
                        acc[k] += a * b * v
        return HomogeneousElement(p + q, target.element(acc))

    def graded_commutativity_holds(self) -> bool:
        for (left, right), coords in self.constants.items():
            sign = -1 if (left[0] * right[0]) % 2 else 1
            swapped = self.constants[(right, left)]
            group = self.group(left[0] + right[0])
            if group.reduce(coords) != group.reduce([sign * v for v in swapped]):
                return False
        return True

    def render(self) -> str:
        lines = [f"Cohomology ring over {_render_ring(self.modulus)} (degrees 0..{self.max_degree}, {self.source})"]
        for k, g in enumerate(self.groups):
            lines.append(f"  H^{k} = {g}")
        lines.append("  unit = " + "[" + ", ".join(str(c) for c in self.unit_coords) + "]")
        for (left, right), coords in sorted(self.constants.items()):
            if left[0] == 0 or right[0] == 0:
                continue
            lhs = f"{self.generator_label(*left)} * {self.generator_label(*right)}"
            lines.append(f"  {lhs} = [" + ", ".join(str(c) for c in coords) + "]")
        return "\n".join(lines)


def _support_key(values: Sequence[int], modulus: int) -> Tuple:
    if modulus:
        sizes = [min(v, modulus - v) for v in values]
    else:
        sizes = [abs(v) for v in values]
    return sum(1 for v in values if v), sum(sizes), tuple(values)


def smallest_support(rep: Cochain) -> Cochain:
    """Greedily add ± coboundaries of single simplices while the support shrinks."""
    x, n = rep.complex, rep.degree
    if n == 0:
        return rep
    rows = x.boundary(n).to_rows()
    best = rep
    improved = True
    while improved:
        improved = False
        for row in rows:
            for sign in (1, -1):
                cand = Cochain(x, n, rep.modulus, tuple(a + sign * b for a, b in zip(best.values, row)))
                if _support_key(cand.values, rep.modulus) < _support_key(best.values, rep.modulus):
                    best = cand
                    improved = True
    return best


@lru_cache(maxsize=64)
def cohomology_ring(x: SimplicialComplex, modulus: int = 0, max_degree: Optional[int] = None) -> GradedRing:
    """Ring H^*(X; Z or Z/m) with structure constants through ``max_degree``."""
    coeffs = coefficient_group(modulus)
    top = x.dimension if max_degree is None else max_degree
    cells = x.cell_complex
    results = [cohomology(cells, k, coeffs) for k in range(top + 1)]
    reps = tuple(
        tuple(smallest_support(Cochain(x, k, modulus, rep)) for rep in result.representatives)
        for k, result in enumerate(results)
    )
    for k, level in enumerate(reps):
        for i, c in enumerate(level):
            if results[k].classify(c.values).coords != tuple(1 if t == i else 0 for t in range(len(level))):
                raise RuntimeError(f"Reduced representative {i} in degree {k} changed its class")

    constants: Dict[StructureKey, Tuple[int, ...]] = {}
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for i, a in enumerate(reps[p]):
                for j, b in enumerate(reps[q]):
                    constants[((p, i), (q, j))] = results[p + q].classify(aw_cup(a, b).values).coords
    unit = results[0].classify(unit_cochain(x, modulus).values).coords if results else ()
    logger.debug("Ring of %s over %s: %d structure constants", x.name or "complex", _render_ring(modulus), len(constants))
    return GradedRing(modulus, top, tuple(r.group for r in results), constants, unit, reps)


def ring_from_powers(modulus: int, groups: Sequence[FgAbGroup], step: int, powers: Dict[int, Tuple[int, ...]]) -> GradedRing:
    """Ring whose nonzero groups are cyclic and generated by powers of one class.

    ``powers[k]`` is the coordinate of ``x^k`` in degree ``k * step``; ``powers[0]``
    is the unit.
    """
    top = len(groups) - 1
    units: Dict[int, int] = {}
    for degree, group in enumerate(groups):
        if group.is_trivial:
            continue
        if degree % step or not group.is_cyclic or degree // step not in powers:
            raise ValueError(f"H^{degree} = {group} is not generated by a power of the class")
        (coord,) = powers[degree // step]
        units[degree] = coord
        order = group.orders[0]
        if (order and _inverse(coord, order) is None) or (not order and abs(coord) != 1):
            raise ValueError(f"x^{degree // step} does not generate H^{degree} = {group}")

    def inverse_in(degree: int, value: int) -> int:
        order = groups[degree].orders[0]
        return value if not order else _inverse(value, order)

    constants: Dict[StructureKey, Tuple[int, ...]] = {}
    for p in units:
        for q in units:
            if p + q > top:
                continue
            if p + q not in units:
                constants[((p, 0), (q, 0))] = ()
                continue
            value = inverse_in(p, units[p]) * inverse_in(q, units[q]) * units[p + q]
            constants[((p, 0), (q, 0))] = groups[p + q].reduce([value])
    return GradedRing(modulus, top, tuple(groups), constants, groups[0].reduce(powers[0]), None, "gysin")


def _inverse(value: int, modulus: int) -> Optional[int]:
    try:
        return pow(value, -1, modulus)
    except ValueError:
        return None


# -- presentations --------------------------------------------------------------

Monomial = Tuple[int, ...]
Polynomial = Tuple[Tuple[Monomial, int], ...]


@dataclass(frozen=True)
class RingPresentation:
    """Commutative polynomial ring over Z or Z/m modulo homogeneous relations.

    A degree of None means the degree is searched for when matching.
    """

    modulus: int
    generators: Tuple[str, ...]
    degrees: Tuple[Optional[int], ...]
    relations: Tuple[Polynomial, ...]
    text: str = ""

    def __str__(self) -> str:
        return self.text or f"{_render_ring(self.modulus)}[{','.join(self.generators)}]"


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    witness: Optional[Dict[str, Tuple[int, Tuple[int, ...]]]] = None
    reason: str = ""


def _candidate_elements(group: FgAbGroup) -> List[GroupElement]:
    if group.is_trivial:
        return [group.zero()]
    ranges = [range(-1, 2) if d == 0 else range(d) for d in group.orders]
    return [group.element(c) for c in itertools.product(*ranges) if any(c)]


def _monomials(degrees: Sequence[int], total: int) -> List[Monomial]:
    out: List[Monomial] = []

    def extend(prefix: List[int], remaining: int) -> None:
        i = len(prefix)
        if i == len(degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in range(remaining // degrees[i] + 1):
            extend(prefix + [e], remaining - e * degrees[i])

    extend([], total)
    return out


def _poly_degree(poly: Polynomial, degrees: Sequence[int]) -> Optional[int]:
    found = {sum(e * d for e, d in zip(mono, degrees)) for mono, c in poly if c}
    if len(found) > 1:
        return -1
    return found.pop() if found else None


class _Evaluator:
    def __init__(self, ring: GradedRing, values: Sequence[HomogeneousElement]):
        self.ring = ring
        self.values = values
        self.cache: Dict[Monomial, HomogeneousElement] = {}

    def monomial(self, mono: Monomial) -> HomogeneousElement:
        if mono not in self.cache:
            acc = self.ring.unit()
            for value, e in zip(self.values, mono):
                for _ in range(e):
                    acc = self.ring.multiply(acc, value)
            self.cache[mono] = acc
        return self.cache[mono]

    def polynomial(self, poly: Polynomial, degree: int) -> HomogeneousElement:
        acc = self.ring.zero(degree)
        for mono, c in poly:
            acc = acc + self.monomial(mono).scale(c)
        return acc


def _check_assignment(ring: GradedRing, claim: RingPresentation, degrees: Sequence[int],
                      values: Sequence[HomogeneousElement], max_degree: int) -> Tuple[bool, str]:
    ev = _Evaluator(ring, values)
    for a, b in itertools.combinations(values, 2):
        if a.degree + b.degree <= max_degree and ring.multiply(a, b) != ring.multiply(b, a):
            return False, "generator images do not commute"
    for poly in claim.relations:
        d = _poly_degree(poly, degrees)
        if d is not None and d <= max_degree and not ev.polynomial(poly, d).is_zero():
            return False, "a relation does not vanish"
    for k in range(max_degree + 1):
        monos = _monomials(degrees, k)
        index = {m: i for i, m in enumerate(monos)}
        columns = []
        for poly in claim.relations:
            d = _poly_degree(poly, degrees)
            if d is None or d > k:
                continue
            for u in _monomials(degrees, k - d):
                col = [0] * len(monos)
                for mono, c in poly:
                    col[index[tuple(a + b for a, b in zip(u, mono))]] += c
                columns.append(col)
        if claim.modulus:
            columns.extend([claim.modulus if i == t else 0 for i in range(len(monos))] for t in range(len(monos)))
        pres = from_presentation(len(monos), IntMatrix.from_columns(columns, rows=len(monos)))
        target = ring.group(k)
        if pres.group != target:
            return False, f"degree {k}: presented {pres.group}, computed {target}"
        images = []
        for lift in pres.lifts.columns():
            acc = ring.zero(k)
            for mono, c in zip(monos, lift):
                if c:
                    acc = acc + ev.monomial(mono).scale(c)
            images.append(acc.element)
        try:
            phi = GroupHom.from_images(pres.group, target, images)
        except IllDefinedHomError:
            return False, f"degree {k}: map from the presentation is not well defined"
        if not phi.is_surjective():
            return False, f"degree {k}: generators do not span H^{k}"
    return True, ""


def match_presentation(ring: GradedRing, claim: RingPresentation, max_degree: Optional[int] = None) -> MatchResult:
    """Search generator assignments making the claimed presentation agree with ``ring``.

    Generators with unannotated degree are tried in every degree 1..max_degree;
    each generator ranges over the nonzero elements of its degree (coordinates
    in {-1, 0, 1} on free summands).
    """
    top = ring.max_degree if max_degree is None else min(max_degree, ring.max_degree)
    if claim.modulus != ring.modulus:
        return MatchResult(False, None, f"coefficients differ: {_render_ring(claim.modulus)} vs {_render_ring(ring.modulus)}")
    degree_options = [[d] if d is not None else list(range(1, top + 1)) for d in claim.degrees]
    reason = "no generator assignment works"
    searched = 0
    for degrees in itertools.product(*degree_options):
        if any(d < 1 for d in degrees):
            continue
        if any(_poly_degree(poly, degrees) == -1 for poly in claim.relations):
            continue
        choices = [_candidate_elements(ring.group(d)) if d <= top else [ring.group(d).zero()] for d in degrees]
        for picked in itertools.product(*choices):
            searched += 1
            values = [HomogeneousElement(d, e) for d, e in zip(degrees, picked)]
            ok, why = _check_assignment(ring, claim, degrees, values, top)
            if ok:
                logger.debug("Matched %s after %d assignments", claim, searched)
                witness = {name: (v.degree, v.coords) for name, v in zip(claim.generators, values)}
                return MatchResult(True, witness, "")
            reason = why
    logger.debug("No match for %s after %d assignments", claim, searched)
    return MatchResult(False, None, reason)
