import json

import pytest

from cohomology_engine.algebra.abgroup import FgAbGroup, GroupHom, parse_group
from cohomology_engine.algebra.intmat import IntMatrix
from cohomology_engine.errors import ChainComplexError, ChainMapError
from cohomology_engine.topology import spaces
from cohomology_engine.topology.complex import (
    POINT,
    CellComplex,
    CellularMap,
    basepoint_inclusion,
    betti_numbers,
    cochain_hom,
    cofiber,
    cofiber_with_inclusion,
    cohomology,
    euler_characteristic,
    homology,
    identity_map,
    induced_map,
    load_complex,
    reduced_cohomology,
    reduced_homology,
    skeleton,
    suspension,
    tensor_complex,
    universal_coefficients,
    wedge_with_inclusions,
)

Z = FgAbGroup.integers()
Z2 = FgAbGroup.cyclic(2)


def _circle():
    return spaces.cellular(spaces.sphere(1))


def test_rejects_nonzero_double_boundary():
    d1 = IntMatrix.from_rows([[1, -1]])
    d2 = IntMatrix.from_rows([[1], [0]])
    with pytest.raises(ChainComplexError) as e:
        CellComplex((1, 2, 1), (d1, d2))
    assert "∂_1∂_2[0][0]" in str(e.value)


def test_rejects_bad_shapes():
    with pytest.raises(ChainComplexError):
        CellComplex((1, 2), (IntMatrix.zeros(2, 1),))
    with pytest.raises(ChainComplexError):
        CellComplex((1, 2), ())
    with pytest.raises(ChainComplexError):
        CellComplex((1,), (), basepoint=3)


def test_homology_of_models():
    klein = spaces.cellular(spaces.KLEIN)
    assert homology(klein, 0) == Z
    assert homology(klein, 1) == FgAbGroup(1, (2,))
    assert homology(klein, 2).is_trivial
    rp3 = spaces.cellular(spaces.rp(3))
    assert [str(homology(rp3, n)) for n in range(4)] == ["Z", "Z/2", "0", "Z"]
    assert reduced_homology(spaces.cellular(spaces.sphere(0)), 0) == Z
    assert betti_numbers(spaces.cellular(spaces.TORUS)) == [1, 2, 1]
    assert euler_characteristic(spaces.cellular(spaces.cp(2))) == 3


@pytest.mark.parametrize("coeff", ["Z", "Z/2", "Z/6", "Z + Z/4"])
def test_cochain_cohomology_matches_universal_coefficients(coeff):
    g = parse_group(coeff)
    for space in spaces.catalog():
        x = spaces.cellular(space)
        for n in range(x.dimension + 2):
            assert cohomology(x, n, g).group == universal_coefficients(x, n, g)


def test_negative_and_high_degrees_are_trivial():
    x = spaces.cellular(spaces.TORUS)
    assert cohomology(x, -1, Z).group.is_trivial
    assert cohomology(x, 5, Z).group.is_trivial


def test_reduced_cohomology():
    s0 = spaces.cellular(spaces.sphere(0))
    assert cohomology(s0, 0, Z).group == FgAbGroup(2)
    assert reduced_cohomology(s0, 0, Z) == Z
    assert reduced_cohomology(POINT, 0, Z2).is_trivial
    assert reduced_cohomology(spaces.cellular(spaces.TORUS), 0, Z).is_trivial
    with pytest.raises(ValueError):
        cohomology(CellComplex((1,)), 0, Z, reduced=True)


def test_representatives_classify_to_basis():
    x = spaces.cellular(spaces.KLEIN)
    for coeff in (Z, Z2, FgAbGroup(1, (4,))):
        for n in range(3):
            result = cohomology(x, n, coeff)
            for i, rep in enumerate(result.representatives):
                assert result.is_cocycle(rep)
                expected = tuple(1 if k == i else 0 for k in range(result.group.ngens))
                assert result.classify(rep).coords == expected


def test_classify_rejects_non_cocycles():
    s = spaces.simplicial(spaces.sphere(1)).cell_complex
    result = cohomology(s, 0, Z)
    with pytest.raises(ValueError):
        result.classify([1, 0, 0])


def test_torus_from_tensor_product():
    product = tensor_complex(_circle(), _circle())
    assert product.cells == (1, 2, 1)
    for coeff in (Z, Z2, FgAbGroup(1, (4,))):
        for n in range(4):
            assert cohomology(product, n, coeff).group == cohomology(spaces.cellular(spaces.TORUS), n, coeff).group


def test_tensor_product_with_torsion():
    rp2 = spaces.cellular(spaces.rp(2))
    product = tensor_complex(rp2, rp2)
    # Künneth: H_2 = Z/2 (from H_1 ⊗ H_1), H_3 = Z/2 (from Tor(H_1, H_1))
    assert homology(product, 2) == Z2
    assert homology(product, 3) == Z2
    assert homology(product, 4).is_trivial


@pytest.mark.parametrize("degree", [-2, 0, 1, 3])
def test_degree_maps_induce_multiplication(degree):
    f = spaces.sphere_degree_map(2, degree)
    f_star = induced_map(f, 2, Z)
    assert f_star == GroupHom.multiplication(Z, degree)
    assert induced_map(f, 2, Z2) == GroupHom.multiplication(Z2, degree)


def test_chain_map_condition_is_checked():
    rp2 = spaces.cellular(spaces.rp(2))
    with pytest.raises(ChainMapError):
        CellularMap(rp2, rp2, (IntMatrix.identity(1), IntMatrix.identity(1), IntMatrix.from_rows([[2]])))
    with pytest.raises(ChainMapError):
        CellularMap(rp2, rp2, (IntMatrix.identity(1),))


def test_identity_induces_identity():
    x = spaces.cellular(spaces.KLEIN)
    for n in range(3):
        assert induced_map(identity_map(x), n, Z).is_isomorphism()


def test_suspension_shifts_reduced_cohomology():
    torus = spaces.cellular(spaces.TORUS)
    st = suspension(torus)
    assert st.cells == (1, 0, 2, 1)
    assert cohomology(st, 2, Z).group == FgAbGroup(2)
    assert cohomology(st, 3, Z).group == Z
    assert suspension(spaces.cellular(spaces.sphere(0))).cells == (1, 1)


def test_wedge_and_inclusions():
    parts = [spaces.cellular(spaces.sphere(2)), _circle(), _circle()]
    w, inclusions = wedge_with_inclusions(parts)
    assert cohomology(w, 1, Z).group == FgAbGroup(2)
    assert cohomology(w, 2, Z).group == Z
    restricted = induced_map(inclusions[0], 2, Z)
    assert restricted.is_isomorphism()
    assert induced_map(inclusions[1], 2, Z).target.is_trivial


def test_cofiber_of_degree_two_map_is_projective_plane():
    cone = cofiber(spaces.sphere_degree_map(1, 2))
    assert cohomology(cone, 1, Z).group.is_trivial
    assert cohomology(cone, 2, Z).group == Z2
    cone, j = cofiber_with_inclusion(basepoint_inclusion(_circle()))
    assert j.preserves_augmentation()
    assert cohomology(cone, 1, Z, reduced=True).group == Z


def test_cochain_hom_from_restriction():
    x = spaces.simplicial(spaces.sphere(1))
    a, _ = spaces.covering_pair(spaces.sphere(1))
    hx = cohomology(x.cell_complex, 0, Z)
    ha = cohomology(a.cell_complex, 0, Z)
    res = cochain_hom(hx, ha, x.restriction(a, 0))
    assert res.is_isomorphism()


def test_skeleton():
    cp2 = spaces.cellular(spaces.cp(2))
    assert skeleton(cp2, 2).cells == (1, 0, 1)
    assert cohomology(skeleton(cp2, 3), 4, Z).group.is_trivial
    with pytest.raises(ValueError):
        skeleton(cp2, -1)


def test_json_round_trip(tmp_path):
    klein = spaces.cellular(spaces.KLEIN)
    path = tmp_path / "klein.json"
    path.write_text(json.dumps(klein.to_json()), encoding="utf-8")
    loaded = load_complex(str(path))
    assert loaded == klein
    assert cohomology(loaded, 2, Z).group == Z2
    with pytest.raises(ChainComplexError):
        CellComplex.from_json({"boundaries": []})
