from itertools import product

import pytest

from quasibgg.bgg import (
    assemble_bgg,
    assemble_cousin,
    assign_signs,
    compare_with_lattice,
    flip_sign,
    induced_differential_sl2_to_g,
    perturb_entry,
    signs_valid,
    sl2_exact_sequence,
    twisted_differential,
    verify_complex,
)
from quasibgg.charring import weyl_dimension
from quasibgg.linalg import GF, QQ
from quasibgg.rootdata import build_root_datum
from quasibgg.truncated import check_module_map, map_is_surjective
from quasibgg.twisting import UnsupportedTwist
from quasibgg.weyl import enumerate_weyl, weyl_element


def brute_force_sign_count(p):
    covers = sorted(p.covers)
    count = 0
    for signs in product((1, -1), repeat=len(covers)):
        if signs_valid(p, dict(zip(covers, signs))):
            count += 1
    return count


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_assign_signs(label):
    p = enumerate_weyl(build_root_datum(label))
    signs = assign_signs(p)
    assert signs_valid(p, signs)
    assert set(signs) == set(p.covers)
    if label == "A1":
        assert signs == {(0, 1): 1}


def test_valid_signs_exist_in_quantity_a2(A2):
    # eight covers and four squares, but the four square constraints have rank three
    p = enumerate_weyl(A2)
    assert (len(p.covers), len(p.squares())) == (8, 4)
    assert brute_force_sign_count(p) == 2 ** (8 - 3)


def test_flipping_one_sign_breaks_validity(A2):
    p = enumerate_weyl(A2)
    signs = assign_signs(p)
    for cover in p.covers:
        flipped = dict(signs)
        flipped[cover] = -flipped[cover]
        assert not signs_valid(p, flipped)


@pytest.mark.parametrize("lam", [(0,), (2,), (5,)])
def test_bgg_sl2(A1, lam):
    rep = verify_complex(assemble_bgg(A1, lam, 10), 3)
    assert rep["ok"] and rep["h0_dim"] == lam[0] + 1


@pytest.mark.parametrize("label,lam,depth,margin", [("A2", (0, 0), 8, 3), ("A2", (1, 1), 8, 3), ("A2", (2, 0), 8, 2), ("B2", (0, 0), 8, 4), ("B2", (1, 0), 8, 3)])
def test_bgg_rank_two(label, lam, depth, margin):
    rd = build_root_datum(label)
    rep = verify_complex(assemble_bgg(rd, lam, depth), margin)
    assert rep["d2_ok"] and rep["higher_cohomology_zero"] and rep["h0_ok"] and rep["euler_ok"]
    assert rep["h0_dim"] == weyl_dimension(rd, lam)


def test_bgg_trivial_weight_has_one_dimensional_h0(A2):
    rep = verify_complex(assemble_bgg(A2, (0, 0), 8), 3)
    assert rep["h0_character"] == [[[0, 0], 1]]


def test_bgg_alternative_reduced_word(A2):
    rep = verify_complex(assemble_bgg(A2, (1, 1), 8, w0_word=(1, 0, 1)), 3)
    assert rep["ok"] and rep["h0_dim"] == 8


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("lam", range(7))
def test_cousin_sl2(A1, p, lam):
    rep = verify_complex(assemble_cousin(A1, (lam,), 12, p), 4)
    assert rep["ok"] and rep["h0_dim"] == lam + 1


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (1, 1)])
def test_cousin_a2(A2, p, lam):
    rep = verify_complex(assemble_cousin(A2, lam, 8, p), 3)
    assert rep["ok"], rep["cohomology"]


def test_cousin_b2_char_two(B2):
    assert verify_complex(assemble_cousin(B2, (0, 0), 6, 2), 3)["ok"]


def test_verify_rejects_large_margin(A1):
    with pytest.raises(ValueError):
        verify_complex(assemble_bgg(A1, (0,), 4), 4)


@pytest.mark.parametrize("build", [lambda rd: assemble_bgg(rd, (1, 1), 6), lambda rd: assemble_cousin(rd, (1, 1), 6, 3)])
@pytest.mark.parametrize("control", [flip_sign, perturb_entry])
def test_negative_controls_detected(A2, build, control):
    rep = verify_complex(control(build(A2)), 2)
    assert not rep["d2_ok"] and not rep["ok"]


def test_sign_flip_is_invisible_in_characteristic_two(A2):
    c = assemble_cousin(A2, (1, 1), 6, 2)
    assert verify_complex(flip_sign(c), 2)["ok"]
    assert not verify_complex(perturb_entry(c), 2)["d2_ok"]


def test_perturb_entry_needs_two_steps(A1):
    with pytest.raises(ValueError):
        perturb_entry(assemble_bgg(A1, (0,), 4))


@pytest.mark.parametrize("lam,p", [(4, 3), (2, 2), (6, 5), (0, 2), (3, 2)])
def test_sl2_exact_sequence(lam, p):
    rep = sl2_exact_sequence(lam, p, 14, 4)
    assert rep["ok"] and rep["module_maps_ok"]
    assert rep["h0_dim"] == lam + 1
    assert all(r["exact"] for r in rep["weights"])


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3)])
@pytest.mark.parametrize("i", [0, 1])
def test_induced_differential_is_a_surjective_module_map(A2, field, i):
    f = induced_differential_sl2_to_g(A2, i, (1, 1), 5, field)
    assert check_module_map(f) == []
    assert map_is_surjective(f, 0)


@pytest.fixture(scope="module")
def deep_bgg(A2):
    return assemble_bgg(A2, (1, 1), 11)


@pytest.mark.parametrize("i,source,scalar", [(0, (1, 0), "7/2"), (1, (0, 1), "-1/20")])
def test_induced_differential_matches_lattice(A2, deep_bgg, i, source, scalar):
    p = deep_bgg.poset
    cover = (p.index(weyl_element(A2, source)), p.index(p.elements[-1]))
    rep = compare_with_lattice(induced_differential_sl2_to_g(A2, i, (1, 1), 4), deep_bgg, cover)
    assert rep == {"isomorphic_terms": True, "scalar": scalar, "match": True}


def test_induced_differential_wrong_cover(A2, deep_bgg):
    p = deep_bgg.poset
    cover = (p.index(weyl_element(A2, (0, 1))), p.index(p.elements[-1]))
    assert not compare_with_lattice(induced_differential_sl2_to_g(A2, 0, (1, 1), 4), deep_bgg, cover)["match"]


@pytest.mark.parametrize("w,i,cover,scalar", [((1,), 0, ((0,), (0, 1)), "1/24"), ((0,), 1, ((1,), (1, 0)), "-5/8")])
def test_twisted_differential_matches_lattice(A2, w, i, cover, scalar):
    g = twisted_differential(A2, weyl_element(A2, w), i, (1, 1), 6)
    assert check_module_map(g) == []
    c = assemble_bgg(A2, (1, 1), 6)
    p = c.poset
    key = (p.index(weyl_element(A2, cover[0])), p.index(weyl_element(A2, cover[1])))
    assert compare_with_lattice(g, c, key) == {"isomorphic_terms": True, "scalar": scalar, "match": True}


def test_twisted_differential_unsupported(A2):
    with pytest.raises(UnsupportedTwist):
        twisted_differential(A2, weyl_element(A2, (0,)), 0, (1, 1), 4)
    with pytest.raises(UnsupportedTwist):
        twisted_differential(A2, weyl_element(A2, (0, 1)), 0, (1, 1), 4)
