import numpy as np
import pytest

from cohomology_engine.algebra.abgroup import FgAbGroup
from cohomology_engine.topology import spaces
from cohomology_engine.topology.complex import cohomology
from cohomology_engine.topology.cup import (
    Cochain,
    aw_cup,
    coboundary,
    coefficient_group,
    cohomology_ring,
    match_presentation,
    random_cochain,
    ring_from_powers,
    smallest_support,
    unit_cochain,
    zero_cochain,
)
from cohomology_engine.utils.parser import parse_presentation

FIXTURES = ["s1", "s2", "torus", "rp2", "klein", "wedge:s2,s1,s1"]


def _fixture(name):
    return spaces.simplicial(spaces.parse_space(name))


def _random_degrees(rng, top):
    p = int(rng.integers(0, top + 1))
    q = int(rng.integers(0, top - p + 1))
    return p, q


def test_cochain_validation():
    x = _fixture("s1")
    with pytest.raises(ValueError):
        Cochain(x, 0, 0, (1, 2))
    assert Cochain(x, 0, 3, (4, -1, 3)).values == (1, 2, 0)
    with pytest.raises(ValueError):
        zero_cochain(x, 0) + zero_cochain(x, 1)
    with pytest.raises(ValueError):
        zero_cochain(x, 0) + zero_cochain(x, 0, modulus=2)
    with pytest.raises(ValueError):
        coefficient_group(1)
    assert coefficient_group(0) == FgAbGroup.integers()


def test_coboundary_squares_to_zero():
    rng = np.random.default_rng(1)
    for name in FIXTURES:
        x = _fixture(name)
        for degree in range(x.dimension + 1):
            a = random_cochain(x, degree, 0, rng)
            assert coboundary(coboundary(a)).is_zero()


@pytest.mark.parametrize("modulus", [0, 2])
@pytest.mark.parametrize("name", FIXTURES)
def test_leibniz_rule(name, modulus):
    x = _fixture(name)
    rng = np.random.default_rng(len(name) * 10 + modulus)
    for _ in range(100):
        p, q = _random_degrees(rng, x.dimension)
        a = random_cochain(x, p, modulus, rng)
        b = random_cochain(x, q, modulus, rng)
        sign = -1 if p % 2 else 1
        lhs = coboundary(aw_cup(a, b))
        rhs = aw_cup(coboundary(a), b) + aw_cup(a, coboundary(b)).scale(sign)
        assert lhs == rhs


@pytest.mark.parametrize("modulus", [0, 2])
@pytest.mark.parametrize("name", FIXTURES)
def test_cup_is_associative_on_cochains(name, modulus):
    x = _fixture(name)
    rng = np.random.default_rng(200 + len(name) * 10 + modulus)
    for _ in range(50):
        p, q = _random_degrees(rng, x.dimension)
        r = int(rng.integers(0, x.dimension - p - q + 1))
        a = random_cochain(x, p, modulus, rng)
        b = random_cochain(x, q, modulus, rng)
        c = random_cochain(x, r, modulus, rng)
        assert aw_cup(aw_cup(a, b), c) == aw_cup(a, aw_cup(b, c))


@pytest.mark.parametrize("modulus", [0, 2])
@pytest.mark.parametrize("name", FIXTURES)
def test_cup_is_bilinear(name, modulus):
    x = _fixture(name)
    rng = np.random.default_rng(300 + len(name) * 10 + modulus)
    for _ in range(50):
        p, q = _random_degrees(rng, x.dimension)
        a, a2 = random_cochain(x, p, modulus, rng), random_cochain(x, p, modulus, rng)
        b, b2 = random_cochain(x, q, modulus, rng), random_cochain(x, q, modulus, rng)
        assert aw_cup(a + a2, b) == aw_cup(a, b) + aw_cup(a2, b)
        assert aw_cup(a, b + b2) == aw_cup(a, b) + aw_cup(a, b2)
        assert aw_cup(a.scale(3), b) == aw_cup(a, b).scale(3)


def test_unit_cochain_is_a_two_sided_unit():
    rng = np.random.default_rng(4)
    x = _fixture("torus")
    one = unit_cochain(x)
    for degree in range(3):
        a = random_cochain(x, degree, 0, rng)
        assert aw_cup(one, a) == a
        assert aw_cup(a, one) == a


def _random_cocycle(x, result, modulus, rng):
    values = [0] * x.count(result.degree)
    for rep in result.representatives:
        k = int(rng.integers(-2, 3))
        values = [v + k * r for v, r in zip(values, rep)]
    cocycle = Cochain(x, result.degree, modulus, tuple(values))
    if result.degree >= 1:
        cocycle = cocycle + coboundary(random_cochain(x, result.degree - 1, modulus, rng))
    return cocycle


@pytest.mark.parametrize("modulus", [0, 2])
@pytest.mark.parametrize("name", FIXTURES)
def test_products_are_graded_commutative_on_classes(name, modulus):
    x = _fixture(name)
    coeffs = coefficient_group(modulus)
    results = [cohomology(x.cell_complex, k, coeffs) for k in range(x.dimension + 1)]
    rng = np.random.default_rng(100 + len(name) + modulus)
    for _ in range(100):
        p, q = _random_degrees(rng, x.dimension)
        a = _random_cocycle(x, results[p], modulus, rng)
        b = _random_cocycle(x, results[q], modulus, rng)
        ab = results[p + q].classify(aw_cup(a, b).values)
        ba = results[p + q].classify(aw_cup(b, a).values)
        sign = -1 if (p * q) % 2 else 1
        assert ab == sign * ba


def test_smallest_support_keeps_the_class():
    x = _fixture("torus")
    result = cohomology(x.cell_complex, 1, FgAbGroup.integers())
    rng = np.random.default_rng(8)
    for rep in result.representatives:
        noisy = Cochain(x, 1, 0, rep) + coboundary(random_cochain(x, 0, 0, rng))
        reduced = smallest_support(noisy)
        assert result.classify(reduced.values) == result.classify(noisy.values)
        assert sum(1 for v in reduced.values if v) <= sum(1 for v in noisy.values if v)


def test_torus_ring():
    ring = cohomology_ring(_fixture("torus"))
    assert [str(g) for g in ring.groups] == ["Z", "Z^2", "Z"]
    a, b = ring.generator(1, 0), ring.generator(1, 1)
    assert ring.multiply(a, a).is_zero()
    assert ring.multiply(a, b).coords in {(1,), (-1,)}
    assert ring.multiply(b, a) == -ring.multiply(a, b)
    assert ring.multiply(ring.unit(), a) == a
    assert ring.graded_commutativity_holds()
    assert "g1(1) * g2(1)" in ring.render()
    with pytest.raises(IndexError):
        ring.generator(2, 1)


def test_wedge_products_vanish():
    ring = cohomology_ring(_fixture("wedge:s2,s1,s1"))
    for i in range(2):
        for j in range(2):
            assert ring.multiply(ring.generator(1, i), ring.generator(1, j)).is_zero()


def test_projective_plane_mod_two():
    ring = cohomology_ring(_fixture("rp2"), 2)
    x = ring.generator(1, 0)
    assert ring.multiply(x, x).coords == (1,)
    assert ring.multiply(x, ring.generator(2, 0)).degree == 3
    assert ring.multiply(x, ring.generator(2, 0)).is_zero()


def test_klein_integral_square_vanishes():
    ring = cohomology_ring(_fixture("klein"))
    free = ring.generator(1, 0)
    assert ring.multiply(free, free).is_zero()


def test_ring_from_powers():
    z = FgAbGroup.integers()
    ring = ring_from_powers(0, [z, FgAbGroup(), z, FgAbGroup(), z], 2, {0: (1,), 1: (1,), 2: (1,)})
    x = ring.generator(2, 0)
    assert ring.multiply(x, x).coords == (1,)
    assert ring.graded_commutativity_holds()
    assert match_presentation(ring, parse_presentation("Z[x]/(x^3); deg x=2")).matched
    with pytest.raises(ValueError):
        ring_from_powers(0, [z, FgAbGroup(), z], 2, {0: (1,), 1: (2,)})
    with pytest.raises(ValueError):
        ring_from_powers(0, [z, z], 2, {0: (1,)})


def test_match_rejections():
    torus = cohomology_ring(_fixture("torus"))
    result = match_presentation(torus, parse_presentation("Z[x,y]/(x^2,y^2); deg x=1, deg y=1"))
    assert not result.matched
    assert result.witness is None
    result = match_presentation(torus, parse_presentation("Z/2[x]/(x^2)"))
    assert not result.matched and "coefficients differ" in result.reason
    rp2 = cohomology_ring(_fixture("rp2"), 2)
    assert not match_presentation(rp2, parse_presentation("Z/2[x]/(x^2)")).matched


def test_match_searches_degrees():
    ring = cohomology_ring(_fixture("s2"))
    result = match_presentation(ring, parse_presentation("Z[x]/(x^2)"))
    assert result.matched
    degree, coords = result.witness["x"]
    assert degree == 2 and coords in {(1,), (-1,)}
