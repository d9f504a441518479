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

"""Long exact sequences: exactness checks, slot solving, Mayer–Vietoris,
Gysin sequences and the Eilenberg–Steenrod axiom harness."""

import logging
from dataclasses import dataclass, replace
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from cohomology_engine.algebra.abgroup import (
    FgAbGroup,
    GroupHom,
    cokernel,
    direct_sum_maps,
    image,
    is_subgroup,
    kernel,
)
from cohomology_engine.algebra.intmat import IntMatrix, kron
from cohomology_engine.errors import SequenceError
from cohomology_engine.topology import spaces
from cohomology_engine.topology.complex import (
    CellComplex,
    CellularMap,
    cochain_hom,
    cofiber_with_inclusion,
    cohomology,
    induced_map,
    suspension,
    tensor_complex,
    tensor_offsets,
    wedge_with_inclusions,
)
from cohomology_engine.topology.cup import GradedRing, ring_from_powers
from cohomology_engine.topology.spaces import SimplicialComplex, SpaceId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequenceSlot:
    """A node; ``group`` None means unknown. Slots sharing ``key`` hold the same group."""

    label: str
    group: Optional[FgAbGroup] = None
    rule: Optional[str] = None
    key: Optional[str] = None

    @property
    def known(self) -> bool:
        return self.group is not None


@dataclass(frozen=True)
class SequenceEdge:
    label: str
    hom: Optional[GroupHom] = None


@dataclass(frozen=True)
class LongExactSequence:
    """Finite window ``slots[0] -> slots[1] -> ...``; edge i maps slot i to slot i+1."""

    slots: Tuple[SequenceSlot, ...]
    edges: Tuple[SequenceEdge, ...]
    truncated_left: bool = True
    truncated_right: bool = True
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.edges) != max(len(self.slots) - 1, 0):
            raise SequenceError(f"{len(self.slots)} slots need {len(self.slots) - 1} edges, got {len(self.edges)}")
        for i, edge in enumerate(self.edges):
            if edge.hom is None:
                continue
            src, dst = self.slots[i], self.slots[i + 1]
            if edge.hom.source != src.group or edge.hom.target != dst.group:
                raise SequenceError(
                    f"Edge {edge.label} ({edge.hom.source} -> {edge.hom.target}) does not connect "
                    f"{src.label} = {src.group} to {dst.label} = {dst.group}"
                )

    def slot(self, label: str) -> SequenceSlot:
        for s in self.slots:
            if s.label == label:
                return s
        raise KeyError(label)

    def render(self) -> str:
        width = max((len(s.label) for s in self.slots), default=0)
        lines = [self.title] if self.title else []
        if self.truncated_left:
            lines.append(" " * (width + 2) + "...")
        for i, s in enumerate(self.slots):
            group = str(s.group) if s.known else "?"
            note = f"   [{s.rule}]" if s.rule else ""
            lines.append(f"  {s.label.ljust(width)}  {group}{note}")
            if i < len(self.edges):
                e = self.edges[i]
                arrow = "|" if e.hom is not None else ":"
                lines.append(" " * (width + 4) + f"{arrow} {e.label}")
        if self.truncated_right:
            lines.append(" " * (width + 2) + "...")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "truncated_left": self.truncated_left,
            "truncated_right": self.truncated_right,
            "slots": [
                {"label": s.label, "group": str(s.group) if s.known else None, "rule": s.rule}
                for s in self.slots
            ],
            "edges": [
                {"label": e.label, "matrix": e.hom.matrix.to_json() if e.hom is not None else None}
                for e in self.edges
            ],
        }


# -- exactness ------------------------------------------------------------------


@dataclass(frozen=True)
class NodeCheck:
    index: int
    label: str
    exact: Optional[bool]
    detail: str = ""


@dataclass(frozen=True)
class ExactnessReport:
    nodes: Tuple[NodeCheck, ...]

    @property
    def all_exact(self) -> bool:
        return all(n.exact is True for n in self.nodes)

    @property
    def failures(self) -> List[NodeCheck]:
        return [n for n in self.nodes if n.exact is not True]


def _exact_at(incoming: GroupHom, outgoing: GroupHom) -> Tuple[bool, str]:
    img_group, img = image(incoming)
    ker_group, ker = kernel(outgoing)
    ok = is_subgroup(img, ker) and is_subgroup(ker, img)
    return ok, f"im = {img_group}, ker = {ker_group}"


def check_exact(seq: LongExactSequence) -> ExactnessReport:
    """Compare image and kernel at each interior node (and at untruncated ends)."""
    checks = []
    n = len(seq.slots)
    for j in range(n):
        slot = seq.slots[j]
        has_in = j > 0
        has_out = j < n - 1
        if not has_in and seq.truncated_left or not has_out and seq.truncated_right:
            continue
        if not slot.known:
            checks.append(NodeCheck(j, slot.label, None, "group unknown"))
            continue
        incoming = seq.edges[j - 1].hom if has_in else GroupHom.zero(FgAbGroup.trivial(), slot.group)
        outgoing = seq.edges[j].hom if has_out else GroupHom.zero(slot.group, FgAbGroup.trivial())
        if incoming is None or outgoing is None:
            checks.append(NodeCheck(j, slot.label, None, "adjacent map unknown"))
            continue
        ok, detail = _exact_at(incoming, outgoing)
        checks.append(NodeCheck(j, slot.label, ok, detail))
    return ExactnessReport(tuple(checks))


# -- solving --------------------------------------------------------------------


def _left_effect(seq: LongExactSequence, slots: List[SequenceSlot], edges: List[SequenceEdge], k: int):
    """The image of the incoming edge in slot k, as (group, map from the left neighbour)."""
    if k == 0:
        return (FgAbGroup.trivial(), None) if not seq.truncated_left else None
    left = slots[k - 1].group
    if left is None:
        return None
    if left.is_trivial:
        return FgAbGroup.trivial(), GroupHom.zero(left, FgAbGroup.trivial())
    if k - 1 == 0:
        return (left, GroupHom.identity(left)) if not seq.truncated_left else None
    before = slots[k - 2].group
    if before is not None and before.is_trivial:
        return left, GroupHom.identity(left)
    if edges[k - 2].hom is not None:
        return cokernel(edges[k - 2].hom)
    return None


def _right_effect(seq: LongExactSequence, slots: List[SequenceSlot], edges: List[SequenceEdge], k: int):
    """Slot k modulo the incoming image, as (group, inclusion into the right neighbour)."""
    last = len(slots) - 1
    if k == last:
        return (FgAbGroup.trivial(), None) if not seq.truncated_right else None
    right = slots[k + 1].group
    if right is None:
        return None
    if right.is_trivial:
        return FgAbGroup.trivial(), GroupHom.zero(FgAbGroup.trivial(), right)
    if k + 1 == last:
        return (right, GroupHom.identity(right)) if not seq.truncated_right else None
    after = slots[k + 2].group
    if after is not None and after.is_trivial:
        return right, GroupHom.identity(right)
    if edges[k + 1].hom is not None:
        return kernel(edges[k + 1].hom)
    return None


def solve(seq: LongExactSequence) -> LongExactSequence:
    """Fill unknown slots forced by exactness.

    Slot k sits in ``0 -> L' -> slot -> R' -> 0`` where L' is the cokernel of
    the map into its left neighbour and R' the kernel of the map out of its
    right neighbour. If both are trivial the slot is trivial; if exactly one
    is, the slot is isomorphic to the other through the adjacent edge.
    Anything else is marked indeterminate. Known slots and edges are never
    changed.
    """
    slots = list(seq.slots)
    edges = list(seq.edges)
    changed = True
    while changed:
        changed = False
        for k, slot in enumerate(slots):
            if slot.known:
                continue
            left = _left_effect(seq, slots, edges, k)
            right = _right_effect(seq, slots, edges, k)
            left_zero = left is not None and left[0].is_trivial
            right_zero = right is not None and right[0].is_trivial
            if left_zero and right_zero:
                group, rule = FgAbGroup.trivial(), "trivial"
                in_map = GroupHom.zero(slots[k - 1].group, group) if k > 0 else None
                out_map = GroupHom.zero(group, slots[k + 1].group) if k < len(slots) - 1 else None
            elif right_zero and left is not None:
                group, in_map = left
                rule = f"iso-left: image of {slots[k - 1].label}"
                out_map = GroupHom.zero(group, slots[k + 1].group) if k < len(slots) - 1 else None
            elif left_zero and right is not None:
                group, out_map = right
                rule = f"iso-right: kernel in {slots[k + 1].label}"
                in_map = GroupHom.zero(slots[k - 1].group, group) if k > 0 else None
            else:
                continue
            slots[k] = replace(slot, group=group, rule=rule)
            if k > 0 and edges[k - 1].hom is None and in_map is not None and slots[k - 1].known:
                edges[k - 1] = replace(edges[k - 1], hom=in_map)
            if k < len(slots) - 1 and edges[k].hom is None and out_map is not None and slots[k + 1].known:
                edges[k] = replace(edges[k], hom=out_map)
            _fill_zero_edges(slots, edges, k)
            logger.info("Solved %s = %s (%s)", slot.label, group, rule)
            if slot.key is not None:
                for j, other in enumerate(slots):
                    if j != k and not other.known and other.key == slot.key:
                        slots[j] = replace(other, group=group, rule=f"same group as {slot.label}")
                        _fill_zero_edges(slots, edges, j)
            changed = True
    for k, slot in enumerate(slots):
        if not slot.known:
            slots[k] = replace(slot, rule="indeterminate")
    return replace(seq, slots=tuple(slots), edges=tuple(edges))


def forget(seq: LongExactSequence, labels) -> LongExactSequence:
    """Copy of ``seq`` with the named slots unknown and their adjacent edges dropped."""
    labels = set(labels)
    missing = labels - {s.label for s in seq.slots}
    if missing:
        raise SequenceError(f"No slot labelled {sorted(missing)[0]!r}")
    slots = list(seq.slots)
    edges = list(seq.edges)
    for k, slot in enumerate(slots):
        if slot.label in labels:
            slots[k] = replace(slot, group=None, rule=None)
            for e in (k - 1, k):
                if 0 <= e < len(edges):
                    edges[e] = replace(edges[e], hom=None)
    return replace(seq, slots=tuple(slots), edges=tuple(edges))


def _fill_zero_edges(slots: List[SequenceSlot], edges: List[SequenceEdge], k: int) -> None:
    # maps to or from a trivial group are forced
    for e in (k - 1, k):
        if 0 <= e < len(edges) and edges[e].hom is None:
            src, dst = slots[e].group, slots[e + 1].group
            if src is not None and dst is not None and (src.is_trivial or dst.is_trivial):
                edges[e] = replace(edges[e], hom=GroupHom.zero(src, dst))


# -- Mayer–Vietoris -------------------------------------------------------------


def _check_cover(x: SimplicialComplex, a: SimplicialComplex, b: SimplicialComplex) -> None:
    for part, name in ((a, "A"), (b, "B")):
        for level in part.simplices:
            for s in level:
                if not x.contains(s):
                    raise SequenceError(f"Cover piece {name} contains {list(s)}, which is not in X")
    for level in x.simplices:
        for s in level:
            if not (a.contains(s) or b.contains(s)):
                raise SequenceError(f"Simplex {list(s)} of X lies in neither cover piece")


def _extension(sub: SimplicialComplex, x: SimplicialComplex, n: int, g: int) -> IntMatrix:
    return kron(x.restriction(sub, n).transpose(), IntMatrix.identity(g))


def _restriction(x: SimplicialComplex, sub: SimplicialComplex, n: int, g: int) -> IntMatrix:
    return kron(x.restriction(sub, n), IntMatrix.identity(g))


def _coboundary_matrix(x: SimplicialComplex, n: int, g: int) -> IntMatrix:
    return kron(x.cell_complex.boundary(n + 1).transpose(), IntMatrix.identity(g))


def _connecting_map(x, a, b, c, n: int, coefficients: FgAbGroup, rng=None) -> GroupHom:
    """Snake-lemma map H^n(A∩B) -> H^{n+1}(X).

    A class z is lifted to the pair (z extended by zero on A, 0 on B), plus a
    random cochain of X when ``rng`` is given; the coboundary of the pair
    glues to a cocycle on X.
    """
    g = coefficients.ngens
    source = cohomology(c.cell_complex, n, coefficients)
    target = cohomology(x.cell_complex, n + 1, coefficients)
    ext = _extension(c, a, n, g)
    r_xa, r_xb = _restriction(x, a, n, g), _restriction(x, b, n, g)
    delta_a, delta_b = _coboundary_matrix(a, n, g), _coboundary_matrix(b, n, g)
    delta_c = _coboundary_matrix(c, n - 1, g)
    orders = coefficients.orders
    images = []
    for z in source.representatives:
        if rng is not None and delta_c.cols:
            t = [int(v) for v in rng.integers(-3, 4, size=delta_c.cols)]
            z = tuple(u + v for u, v in zip(z, delta_c.apply(t)))
        lift_a = ext.apply(z)
        lift_b = (0,) * (b.count(n) * g)
        if rng is not None and x.count(n):
            y = [int(v) for v in rng.integers(-3, 4, size=x.count(n) * g)]
            lift_a = tuple(u + v for u, v in zip(lift_a, r_xa.apply(y)))
            lift_b = r_xb.apply(y)
        da, db = delta_a.apply(lift_a), delta_b.apply(lift_b)
        glued = []
        for simplex in (x.simplices[n + 1] if n + 1 <= x.dimension else ()):
            in_a, in_b = a.contains(simplex), b.contains(simplex)
            block_a = da[a.index(simplex) * g:(a.index(simplex) + 1) * g] if in_a else None
            block_b = db[b.index(simplex) * g:(b.index(simplex) + 1) * g] if in_b else None
            if in_a and in_b and any((u - v) % d if d else u - v for u, v, d in zip(block_a, block_b, orders)):
                raise RuntimeError(f"Lifted coboundaries disagree on {list(simplex)}")
            glued.extend(block_a if in_a else block_b)
        images.append(target.classify(glued))
    return GroupHom.from_images(source.group, target.group, images)


def mayer_vietoris(x: SimplicialComplex, a: SimplicialComplex, b: SimplicialComplex,
                   coefficients: FgAbGroup, max_degree: int, rng=None) -> LongExactSequence:
    """``0 -> H^0(X) -i-> H^0(A)+H^0(B) -Δ-> H^0(A∩B) -d-> H^1(X) -> ...``

    ``i(α) = (α|A, α|B)`` and ``Δ(α, β) = α|A∩B - β|A∩B``.
    """
    _check_cover(x, a, b)
    c = a.intersection(b)
    g = coefficients.ngens
    slots = [SequenceSlot("0", FgAbGroup.trivial())]
    edges: List[SequenceEdge] = []
    connecting: Optional[GroupHom] = None
    for n in range(max_degree + 1):
        hx = cohomology(x.cell_complex, n, coefficients)
        ha = cohomology(a.cell_complex, n, coefficients)
        hb = cohomology(b.cell_complex, n, coefficients)
        hc = cohomology(c.cell_complex, n, coefficients)
        pair = direct_sum_maps([ha.group, hb.group])
        res_a = cochain_hom(hx, ha, _restriction(x, a, n, g))
        res_b = cochain_hom(hx, hb, _restriction(x, b, n, g))
        i_map = pair.injections[0].compose(res_a) + pair.injections[1].compose(res_b)
        res_ac = cochain_hom(ha, hc, _restriction(a, c, n, g))
        res_bc = cochain_hom(hb, hc, _restriction(b, c, n, g))
        delta = res_ac.compose(pair.projections[0]) - res_bc.compose(pair.projections[1])
        if connecting is None:
            edges.append(SequenceEdge("0", GroupHom.zero(FgAbGroup.trivial(), hx.group)))
        else:
            edges.append(SequenceEdge("d", connecting))
        slots.extend([
            SequenceSlot(f"H^{n}(X)", hx.group, key=f"H^{n}(X)"),
            SequenceSlot(f"H^{n}(A)+H^{n}(B)", pair.group, key=f"H^{n}(A)+H^{n}(B)"),
            SequenceSlot(f"H^{n}(A∩B)", hc.group, key=f"H^{n}(A∩B)"),
        ])
        edges.extend([SequenceEdge("i", i_map), SequenceEdge("Δ", delta)])
        connecting = _connecting_map(x, a, b, c, n, coefficients, rng)
    top = cohomology(x.cell_complex, max_degree + 1, coefficients)
    slots.append(SequenceSlot(f"H^{max_degree + 1}(X)", top.group, key=f"H^{max_degree + 1}(X)"))
    edges.append(SequenceEdge("d", connecting))
    logger.info("Assembled Mayer-Vietoris sequence through degree %d", max_degree)
    return LongExactSequence(tuple(slots), tuple(edges), truncated_left=False, truncated_right=True,
                             title=f"Mayer-Vietoris, coefficients {coefficients}")


def mayer_vietoris_for(space: SpaceId, coefficients: FgAbGroup, max_degree: int = 2, rng=None) -> LongExactSequence:
    a, b = spaces.covering_pair(space)
    return mayer_vietoris(spaces.simplicial(space), a, b, coefficients, max_degree, rng)


# -- Gysin ----------------------------------------------------------------------


def gysin(base_groups: Dict[int, Optional[FgAbGroup]], total_groups: Dict[int, Optional[FgAbGroup]],
          cup_e: Dict[int, Optional[GroupHom]], n: int, max_degree: int,
          pullbacks: Optional[Dict[int, GroupHom]] = None,
          connecting: Optional[Dict[int, GroupHom]] = None) -> LongExactSequence:
    """``... -> H^{i-1}(E) -> H^{i-n}(B) -⌣e-> H^i(B) -p*-> H^i(E) -> H^{i-n+1}(B) -> ...``

    Groups missing from the dictionaries (or None) are unknown; negative
    degrees are trivial. ``cup_e[i]`` maps H^{i-n}(B) to H^i(B).
    """
    if n < 1:
        raise SequenceError(f"Euler class degree must be >= 1, got {n}")
    pullbacks = pullbacks or {}
    connecting = connecting or {}

    def base(k: int) -> Optional[FgAbGroup]:
        return FgAbGroup.trivial() if k < 0 else base_groups.get(k)

    def total(k: int) -> Optional[FgAbGroup]:
        return FgAbGroup.trivial() if k < 0 else total_groups.get(k)

    slots: List[SequenceSlot] = []
    edges: List[SequenceEdge] = []
    for i in range(max_degree + 1):
        slots.extend([
            SequenceSlot(f"H^{i - n}(B)", base(i - n), key=f"H^{i - n}(B)"),
            SequenceSlot(f"H^{i}(B)", base(i), key=f"H^{i}(B)"),
            SequenceSlot(f"H^{i}(E)", total(i), key=f"H^{i}(E)"),
        ])
        given = [("⌣e", cup_e.get(i), base(i - n), base(i)),
                 ("p*", pullbacks.get(i), base(i), total(i))]
        if i < max_degree:
            given.append(("d", connecting.get(i), total(i), base(i + 1 - n)))
        for label, hom, src, dst in given:
            if hom is not None and (hom.source != src or hom.target != dst):
                raise SequenceError(f"{label} in degree {i} does not map {src} to {dst}")
            if hom is None and src is not None and dst is not None and (src.is_trivial or dst.is_trivial):
                hom = GroupHom.zero(src, dst)
            edges.append(SequenceEdge(label, hom))
    return LongExactSequence(tuple(slots), tuple(edges), truncated_left=False, truncated_right=True,
                             title=f"Gysin sequence, Euler class in degree {n}")


def _sphere_cohomology(n: int, coefficients: FgAbGroup, max_degree: int) -> Dict[int, FgAbGroup]:
    s = spaces.cellular(spaces.sphere(n))
    return {k: cohomology(s, k, coefficients).group for k in range(max_degree + 1)}


def cp2_gysin(max_degree: int = 4) -> LongExactSequence:
    """``S^1 -> S^5 -> CP^2``: only H^0(CP^2) = Z and the cohomology of S^5 are given."""
    z = FgAbGroup.integers()
    return gysin({0: z}, _sphere_cohomology(5, z, max_degree), {}, 2, max_degree,
                 pullbacks={0: GroupHom.identity(z)})


def rp_infinity_gysin(max_degree: int = 5) -> LongExactSequence:
    """``S^0 -> S^∞ -> RP^∞`` over Z/2 with contractible total space."""
    z2 = FgAbGroup.cyclic(2)
    total = {k: (z2 if k == 0 else FgAbGroup.trivial()) for k in range(max_degree + 1)}
    return gysin({0: z2}, total, {}, 1, max_degree,
                 pullbacks={0: GroupHom.identity(z2)}, connecting={0: GroupHom.zero(z2, z2)})


@dataclass(frozen=True)
class GysinReport:
    n: int
    base_groups: Tuple[Optional[FgAbGroup], ...]
    powers: Dict[int, Tuple[int, ...]]
    generates: Dict[int, bool]
    isomorphisms: Dict[int, Optional[bool]]

    @property
    def euler_class(self) -> Optional[Tuple[int, ...]]:
        return self.powers.get(1)


def _cup_edge(seq: LongExactSequence, n: int, i: int) -> Optional[GroupHom]:
    return seq.edges[3 * i].hom if 3 * i < len(seq.edges) else None


def gysin_report(seq: LongExactSequence, n: int, max_degree: int) -> GysinReport:
    """Powers of e = ⌣e(1), whether they generate, and which ⌣e maps are isomorphisms."""
    groups = tuple(seq.slots[3 * i + 1].group for i in range(max_degree + 1))
    isomorphisms = {}
    for i in range(max_degree + 1):
        hom = _cup_edge(seq, n, i)
        isomorphisms[i] = hom.is_isomorphism() if hom is not None else None
    powers: Dict[int, Tuple[int, ...]] = {}
    generates: Dict[int, bool] = {}
    if groups[0] is not None and groups[0].is_cyclic and groups[0].ngens:
        powers[0] = (1,)
        k = 1
        while k * n <= max_degree:
            hom = _cup_edge(seq, n, k * n)
            if hom is None:
                break
            powers[k] = hom(hom.source.element(powers[k - 1])).coords
            k += 1
    for k, coords in powers.items():
        group = groups[k * n]
        generates[k] = group is not None and group.is_cyclic and bool(group.ngens) and _is_unit(coords[0], group.orders[0])
    return GysinReport(n, groups, powers, generates, isomorphisms)


def _is_unit(value: int, order: int) -> bool:
    return abs(value) == 1 if order == 0 else gcd(value, order) == 1


def gysin_ring(seq: LongExactSequence, n: int, max_degree: int, modulus: int) -> GradedRing:
    """Ring of the base generated by the Euler class, from a solved Gysin sequence."""
    report = gysin_report(seq, n, max_degree)
    if any(g is None for g in report.base_groups):
        raise SequenceError("Gysin sequence still has unknown base groups")
    return ring_from_powers(modulus, report.base_groups, n, report.powers)


def product_bundle_sequence(base: CellComplex, n: int, coefficients: FgAbGroup, max_degree: int) -> LongExactSequence:
    """Gysin sequence of ``B x S^{n-1} -> B`` with zero Euler class, all maps computed on cochains."""
    if n < 2:
        raise SequenceError("Product bundles need a fiber sphere of dimension >= 1")
    fiber = spaces.cellular(spaces.sphere(n - 1))
    total = tensor_complex(base, fiber)
    offsets, _ = tensor_offsets(base, fiber)
    k = n - 1
    g = coefficients.ngens

    # b x pt maps to b, b x (top cell) maps to 0
    comps = []
    for deg in range(len(total.cells)):
        rows = [[0] * total.cell_count(deg) for _ in range(base.cell_count(deg))]
        for b in range(base.cell_count(deg)):
            rows[b][offsets[(deg, 0)] + b] = 1
        comps.append(IntMatrix.from_rows(rows, cols=total.cell_count(deg)))
    projection = CellularMap(total, base, tuple(comps))

    slots: List[SequenceSlot] = []
    edges: List[SequenceEdge] = []
    for i in range(max_degree + 1):
        hb_low = cohomology(base, i - n, coefficients)
        hb = cohomology(base, i, coefficients)
        he = cohomology(total, i, coefficients)
        slots.extend([
            SequenceSlot(f"H^{i - n}(B)", hb_low.group),
            SequenceSlot(f"H^{i}(B)", hb.group),
            SequenceSlot(f"H^{i}(E)", he.group),
        ])
        edges.append(SequenceEdge("⌣e", GroupHom.zero(hb_low.group, hb.group)))
        edges.append(SequenceEdge("p*", induced_map(projection, i, coefficients)))
        if i < max_degree:
            # integrate over the fiber: read the cochain on cells b x (top cell of the sphere)
            target = cohomology(base, i + 1 - n, coefficients)
            rows = []
            for b in range(base.cell_count(i - k)):
                row = [0] * total.cell_count(i)
                row[offsets[(i - k, k)] + b] = 1
                rows.append(row)
            fiber_integral = kron(IntMatrix.from_rows(rows, cols=total.cell_count(i)), IntMatrix.identity(g))
            edges.append(SequenceEdge("d", cochain_hom(he, target, fiber_integral)))
    return LongExactSequence(tuple(slots), tuple(edges), truncated_left=False, truncated_right=True,
                             title=f"Gysin sequence of B x S^{k}, zero Euler class")


# -- Eilenberg–Steenrod ---------------------------------------------------------


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    details: Tuple[str, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    space: str
    coefficients: str
    results: Tuple[AxiomResult, ...]

    @property
    def passed_count(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = [f"Eilenberg-Steenrod axioms for {self.space} with coefficients {self.coefficients}"]
        for r in self.results:
            lines.append(f"  [{'PASS' if r.passed else 'FAIL'}] {r.name}")
            lines.extend(f"      {d}" for d in r.details)
        lines.append(f"{self.passed_count}/{len(self.results)} axioms pass")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "space": self.space,
            "coefficients": self.coefficients,
            "results": [{"name": r.name, "passed": r.passed, "details": list(r.details)} for r in self.results],
        }


def check_suspension(x: CellComplex, coefficients: FgAbGroup, max_degree: int) -> AxiomResult:
    sx = suspension(x)
    details, ok = [], True
    for n in range(-1, max_degree + 1):
        lower = cohomology(x, n, coefficients, reduced=True).group
        upper = cohomology(sx, n + 1, coefficients, reduced=True).group
        ok = ok and lower == upper
        details.append(f"H~^{n}(X) = {lower}, H~^{n + 1}(ΣX) = {upper}")
    return AxiomResult("suspension", ok, tuple(details))


def check_exactness(space: SpaceId, coefficients: FgAbGroup, max_degree: int) -> AxiomResult:
    details, ok = [], True
    for name, f in spaces.catalog_maps(space):
        cone, j = cofiber_with_inclusion(f)
        for n in range(max_degree + 1):
            j_star = induced_map(j, n, coefficients, reduced=True)
            f_star = induced_map(f, n, coefficients, reduced=True)
            exact, detail = _exact_at(j_star, f_star)
            ok = ok and exact
            if not exact:
                details.append(f"{name}, degree {n}: {detail}")
        details.append(f"{name}: checked degrees 0..{max_degree}")
    return AxiomResult("exactness", ok, tuple(details))


def check_dimension(coefficients: FgAbGroup) -> AxiomResult:
    s0 = spaces.cellular(spaces.sphere(0))
    details, ok = [], True
    for n in range(-2, 5):
        group = cohomology(s0, n, coefficients, reduced=True).group
        if n == 0:
            details.append(f"H~^0(S^0) = {group} (not part of the axiom)")
            continue
        ok = ok and group.is_trivial
        details.append(f"H~^{n}(S^0) = {group}")
    return AxiomResult("dimension", ok, tuple(details))


def check_additivity(space: SpaceId, coefficients: FgAbGroup, max_degree: int) -> AxiomResult:
    if space.kind == "wedge":
        summands = [spaces.cellular(p) for p in space.params]
    else:
        summands = [spaces.cellular(space), spaces.cellular(space)]
    w, inclusions = wedge_with_inclusions(summands)
    details, ok = [], True
    for n in range(max_degree + 1):
        pieces = [cohomology(s, n, coefficients, reduced=True).group for s in summands]
        total = direct_sum_maps(pieces)
        combined = None
        for inj, inc in zip(total.injections, inclusions):
            term = inj.compose(induced_map(inc, n, coefficients, reduced=True))
            combined = term if combined is None else combined + term
        if combined is None:
            combined = GroupHom.zero(cohomology(w, n, coefficients, reduced=True).group, total.group)
        iso = combined.is_isomorphism()
        ok = ok and iso
        details.append(f"H~^{n}(wedge) = {combined.source}, sum of summands = {total.group}")
    return AxiomResult("additivity", ok, tuple(details))


def axiom_suite(space: SpaceId, coefficients: FgAbGroup, max_degree: int = 3) -> AxiomReport:
    x = spaces.cellular(space)
    results = (
        check_suspension(x, coefficients, max_degree),
        check_exactness(space, coefficients, max_degree),
        check_dimension(coefficients),
        check_additivity(space, coefficients, max_degree),
    )
    report = AxiomReport(str(space), str(coefficients), results)
    logger.info("Axioms for %s with %s: %d/4 pass", space, coefficients, report.passed_count)
    return report
