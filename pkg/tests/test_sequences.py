import numpy as np
import pytest

from cohomology_engine.algebra.abgroup import FgAbGroup, GroupHom, parse_group
from cohomology_engine.errors import SequenceError
from cohomology_engine.topology import spaces
from cohomology_engine.topology.sequences import (
    LongExactSequence,
    SequenceEdge,
    SequenceSlot,
    axiom_suite,
    check_dimension,
    check_exact,
    cp2_gysin,
    forget,
    gysin,
    gysin_report,
    gysin_ring,
    mayer_vietoris_for,
    product_bundle_sequence,
    rp_infinity_gysin,
    solve,
)

Z = FgAbGroup.integers()
Z2 = FgAbGroup.cyclic(2)


def test_sequence_shape_is_checked():
    with pytest.raises(SequenceError):
        LongExactSequence((SequenceSlot("a", Z), SequenceSlot("b", Z)), ())
    with pytest.raises(SequenceError):
        LongExactSequence(
            (SequenceSlot("a", Z), SequenceSlot("b", Z2)),
            (SequenceEdge("f", GroupHom.identity(Z)),),
        )


def test_short_exact_sequence():
    seq = LongExactSequence(
        (SequenceSlot("0", FgAbGroup()), SequenceSlot("Z", Z), SequenceSlot("Z'", Z),
         SequenceSlot("Z/2", Z2), SequenceSlot("0'", FgAbGroup())),
        (SequenceEdge("0", GroupHom.zero(FgAbGroup(), Z)),
         SequenceEdge("2", GroupHom.multiplication(Z, 2)),
         SequenceEdge("p", GroupHom.from_images(Z, Z2, [Z2.element([1])])),
         SequenceEdge("0", GroupHom.zero(Z2, FgAbGroup()))),
        truncated_left=False, truncated_right=False,
    )
    assert check_exact(seq).all_exact
    broken = LongExactSequence(
        seq.slots,
        seq.edges[:1] + (SequenceEdge("3", GroupHom.multiplication(Z, 3)),) + seq.edges[2:],
        truncated_left=False, truncated_right=False,
    )
    report = check_exact(broken)
    assert not report.all_exact
    assert {n.label for n in report.failures} == {"Z'"}


def test_solve_recovers_forgotten_middle_term():
    seq = LongExactSequence(
        (SequenceSlot("0", FgAbGroup()), SequenceSlot("A", Z), SequenceSlot("B"), SequenceSlot("C", FgAbGroup())),
        (SequenceEdge("0", GroupHom.zero(FgAbGroup(), Z)), SequenceEdge("f"), SequenceEdge("g")),
        truncated_left=False,
    )
    solved = solve(seq)
    assert solved.slot("B").group == Z
    assert solved.slot("B").rule.startswith("iso-left")
    assert check_exact(solved).all_exact


@pytest.mark.parametrize("coeff", ["Z", "Z/2", "Z/4", "Z + Z/3"])
@pytest.mark.parametrize("space", [spaces.sphere(1), spaces.sphere(2), spaces.TORUS])
def test_mayer_vietoris_is_exact(space, coeff):
    seq = mayer_vietoris_for(space, parse_group(coeff))
    report = check_exact(seq)
    assert report.all_exact, [(n.label, n.detail) for n in report.failures]


@pytest.mark.parametrize("coeff", ["Z", "Z/2", "Z + Z/3"])
def test_circle_recovered_from_neighbours(coeff):
    g = parse_group(coeff)
    seq = forget(mayer_vietoris_for(spaces.sphere(1), g), ["H^1(X)"])
    assert seq.slot("H^1(X)").group is None
    solved = solve(seq)
    assert solved.slot("H^1(X)").group == g
    assert check_exact(solved).all_exact


def test_solve_leaves_underdetermined_slots():
    seq = forget(mayer_vietoris_for(spaces.TORUS, Z), ["H^1(X)", "H^1(A)+H^1(B)"])
    solved = solve(seq)
    assert solved.slot("H^1(X)").rule == "indeterminate"
    assert solved.slot("H^1(A)+H^1(B)").rule == "indeterminate"
    assert any(n.exact is None for n in check_exact(solved).nodes)


def test_forget_unknown_label():
    with pytest.raises(SequenceError):
        forget(mayer_vietoris_for(spaces.sphere(1), Z), ["H^7(X)"])


def test_connecting_map_does_not_depend_on_lifts():
    expected = mayer_vietoris_for(spaces.TORUS, Z)
    for seed in (0, 1, 2):
        seq = mayer_vietoris_for(spaces.TORUS, Z, rng=np.random.default_rng(seed))
        for e, f in zip(expected.edges, seq.edges):
            if e.label == "d":
                assert e.hom == f.hom


def test_torus_connecting_map_is_onto_top_class():
    seq = mayer_vietoris_for(spaces.TORUS, Z)
    d = seq.edges[[s.label for s in seq.slots].index("H^1(A∩B)")]
    assert d.label == "d"
    assert d.hom.is_isomorphism()


def test_cp2_gysin():
    solved = solve(cp2_gysin(4))
    assert solved.slot("H^2(B)").group == Z
    assert solved.slot("H^4(B)").group == Z
    assert solved.slot("H^1(B)").group.is_trivial
    assert solved.slot("H^3(B)").group.is_trivial
    report = gysin_report(solved, 2, 4)
    assert report.euler_class in {(1,), (-1,)}
    assert report.generates[1] and report.generates[2]
    ring = gysin_ring(solved, 2, 4, 0)
    e = ring.generator(2, 0)
    assert ring.multiply(e, e).coords in {(1,), (-1,)}


def test_rp_infinity_gysin():
    solved = solve(rp_infinity_gysin(5))
    for i in range(6):
        assert solved.slot(f"H^{i}(B)").group == Z2
    report = gysin_report(solved, 1, 5)
    assert all(report.isomorphisms[i] for i in range(1, 6))
    assert all(report.generates[k] for k in range(6))


def test_gysin_ring_needs_a_solved_sequence():
    with pytest.raises(SequenceError):
        gysin_ring(cp2_gysin(4), 2, 4, 0)


def test_gysin_rejects_bad_input():
    with pytest.raises(SequenceError):
        gysin({0: Z}, {0: Z}, {}, 0, 2)
    with pytest.raises(SequenceError):
        gysin({0: Z}, {0: Z}, {2: GroupHom.identity(Z2)}, 2, 2)


@pytest.mark.parametrize("coeff", ["Z", "Z/2"])
@pytest.mark.parametrize("name", ["s2", "torus", "rp2"])
def test_product_bundle_is_exact(name, coeff):
    base = spaces.cellular(spaces.parse_space(name))
    seq = product_bundle_sequence(base, 2, parse_group(coeff), 3)
    report = check_exact(seq)
    assert report.all_exact, [(n.label, n.detail) for n in report.failures]


def test_product_bundle_needs_positive_fiber():
    with pytest.raises(SequenceError):
        product_bundle_sequence(spaces.cellular(spaces.sphere(2)), 1, Z, 2)


def test_axiom_suite():
    report = axiom_suite(spaces.sphere(2), FgAbGroup.cyclic(6))
    assert report.all_passed
    assert [r.name for r in report.results] == ["suspension", "exactness", "dimension", "additivity"]
    assert report.render().endswith("4/4 axioms pass")
    assert report.to_json()["space"] == "s2"


def test_dimension_axiom_skips_degree_zero():
    result = check_dimension(Z)
    assert result.passed
    assert "H~^0(S^0) = Z (not part of the axiom)" in result.details
