"""End-to-end results for the catalog spaces, checked against closed forms."""

import pytest

from cohomology_engine.algebra.abgroup import FgAbGroup, direct_sum, parse_group, quotient_by_n, torsion_sub
from cohomology_engine.bench.bench_case import PASS
from cohomology_engine.bench.builtin_suite import torus_wedge_pair
from cohomology_engine.bench.runner import ring_for, run_suite
from cohomology_engine.topology import sequences, spaces
from cohomology_engine.topology.complex import (
    cohomology,
    cohomology_direct_mod_p,
    dimension_mod_p,
    tensor_complex,
)
from cohomology_engine.topology.cup import cohomology_ring, match_presentation
from cohomology_engine.utils.parser import parse_presentation

COEFFS = ["Z", "Z/2", "Z/12", "Z + Z/4"]
RP2_COEFFS = ["Z", "Z/2", "Z/3", "Z/4", "Z + Z/2"]


def _elementary_two_group(count: int) -> FgAbGroup:
    rank = count.bit_length() - 1
    return FgAbGroup(0, (2,) * rank)


def _two_torsion(g: FgAbGroup) -> FgAbGroup:
    if g.is_finite:
        return _elementary_two_group(sum(1 for x in g.elements() if (2 * x).is_zero()))
    return torsion_sub(g, 2)[0]


def _mod_two(g: FgAbGroup) -> FgAbGroup:
    if g.is_finite:
        doubles = len({(2 * x).coords for x in g.elements()})
        return _elementary_two_group(g.order() // doubles)
    return quotient_by_n(g, 2)[0]


@pytest.mark.parametrize("coeff", COEFFS)
def test_spheres(coeff):
    g = parse_group(coeff)
    for m in range(1, 5):
        x = spaces.cellular(spaces.sphere(m))
        for n in range(5):
            expected = g if n in (0, m) else FgAbGroup()
            assert cohomology(x, n, g).group == expected
    assert cohomology(spaces.cellular(spaces.sphere(0)), 0, g).group == direct_sum([g, g])


@pytest.mark.parametrize("coeff", COEFFS)
def test_torus_in_every_model(coeff):
    g = parse_group(coeff)
    circle = spaces.cellular(spaces.sphere(1))
    models = [
        spaces.cellular(spaces.TORUS),
        tensor_complex(circle, circle),
        spaces.simplicial(spaces.TORUS).cell_complex,
    ]
    for x in models:
        assert cohomology(x, 0, g).group == g
        assert cohomology(x, 1, g).group == direct_sum([g, g])
        assert cohomology(x, 2, g).group == g


@pytest.mark.parametrize("coeff", RP2_COEFFS)
def test_projective_plane(coeff):
    g = parse_group(coeff)
    for x in (spaces.cellular(spaces.rp(2)), spaces.simplicial(spaces.rp(2)).cell_complex):
        assert cohomology(x, 1, g).group == _two_torsion(g)
        assert cohomology(x, 2, g).group == _mod_two(g)


@pytest.mark.parametrize("coeff", RP2_COEFFS)
def test_klein_bottle(coeff):
    g = parse_group(coeff)
    for x in (spaces.cellular(spaces.KLEIN), spaces.simplicial(spaces.KLEIN).cell_complex):
        assert cohomology(x, 1, g).group == direct_sum([g, _two_torsion(g)])
        assert cohomology(x, 2, g).group == _mod_two(g)


@pytest.mark.parametrize("coeff", COEFFS)
def test_complex_projective_plane(coeff):
    g = parse_group(coeff)
    x = spaces.cellular(spaces.cp(2))
    for n in range(6):
        assert cohomology(x, n, g).group == (g if n in (0, 2, 4) else FgAbGroup())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_real_projective_spaces_mod_two(n):
    z2 = FgAbGroup.cyclic(2)
    x = spaces.cellular(spaces.rp(n))
    for i in range(n + 1):
        assert cohomology(x, i, z2).group == z2
    ring = ring_for(spaces.rp(n), 2)
    gen = ring.generator(1, 0)
    power = ring.unit()
    for i in range(1, n + 1):
        power = ring.multiply(power, gen)
        assert power.coords == (1,)


@pytest.mark.parametrize("name,modulus,claim", [
    ("s1", 0, "Z[x]/(x^2)"),
    ("s2", 0, "Z[x]/(x^2)"),
    ("s3", 0, "Z[x]/(x^2)"),
    ("rp2", 0, "Z[x]/(2x,x^2)"),
    ("klein", 0, "Z[x,y]/(2y,x^2,y^2,xy)"),
    ("rp2", 2, "Z/2[x]/(x^3)"),
    ("klein", 2, "Z/2[x,y]/(x^3,y^2,xy+x^2)"),
    ("torus", 2, "Z/2[x,y]/(x^2,y^2); deg x=1, deg y=1"),
    ("wedge:s2,s1,s1", 2, "Z/2[x,y,z]/(x^2,y^2,xy,xz,yz,z^2); deg x=1, deg y=1, deg z=2"),
])
def test_ring_presentations_match(name, modulus, claim):
    ring = cohomology_ring(spaces.simplicial(spaces.parse_space(name)), modulus)
    result = match_presentation(ring, parse_presentation(claim))
    assert result.matched, result.reason


def test_complex_projective_ring_from_gysin():
    ring = ring_for(spaces.cp(2), 0)
    assert ring.source == "gysin"
    assert match_presentation(ring, parse_presentation("Z[x]/(x^3)")).matched


def test_torus_and_wedge_are_told_apart():
    report = run_suite(torus_wedge_pair(), threads=1, progress=False)
    torus, wedge = report.results
    assert torus.status == PASS and torus.value in {(1,), (-1,)}
    assert wedge.status == PASS and wedge.value == (0,)

    torus_ring = cohomology_ring(spaces.simplicial(spaces.TORUS), 2)
    wedge_ring = cohomology_ring(spaces.simplicial(spaces.parse_space("wedge:s2,s1,s1")), 2)
    exterior = parse_presentation("Z/2[x,y]/(x^2,y^2); deg x=1, deg y=1")
    trivial_products = parse_presentation("Z/2[x,y,z]/(x^2,y^2,xy,xz,yz,z^2); deg x=1, deg y=1, deg z=2")
    assert match_presentation(torus_ring, exterior).matched
    assert not match_presentation(wedge_ring, exterior).matched
    assert match_presentation(wedge_ring, trivial_products).matched
    assert not match_presentation(torus_ring, trivial_products).matched


@pytest.mark.parametrize("coeff", ["Z", "Z/2", "Z/12"])
@pytest.mark.parametrize("name", spaces.CATALOG)
def test_axioms_hold(name, coeff):
    report = sequences.axiom_suite(spaces.parse_space(name), parse_group(coeff), 3)
    assert report.all_passed, report.render()


@pytest.mark.parametrize("coeff", COEFFS)
@pytest.mark.parametrize("space", [spaces.sphere(1), spaces.sphere(2), spaces.TORUS])
def test_mayer_vietoris_exact(space, coeff):
    assert sequences.check_exact(sequences.mayer_vietoris_for(space, parse_group(coeff))).all_exact


def test_gysin_presets():
    z = FgAbGroup.integers()
    cp2 = sequences.solve(sequences.cp2_gysin(4))
    assert cp2.slot("H^4(B)").group == z
    assert sequences.gysin_report(cp2, 2, 4).generates[2]
    rp = sequences.solve(sequences.rp_infinity_gysin(5))
    report = sequences.gysin_report(rp, 1, 5)
    assert all(report.isomorphisms[i] for i in range(1, 6))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mod_p_dimensions_agree(p):
    for space in spaces.catalog():
        x = spaces.cellular(space)
        for n in range(5):
            computed = cohomology(x, n, FgAbGroup.cyclic(p)).group
            assert computed.ngens == cohomology_direct_mod_p(x, n, p)
            assert dimension_mod_p(computed, p) == computed.ngens
