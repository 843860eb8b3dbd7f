from itertools import product

import pytest

from quasibgg.rootdata import (
    UnsupportedType,
    build_root_datum,
    dot_action,
    is_dominant,
    is_dot_regular,
    is_regular_dominant,
    parse_weight,
    positive_roots,
)
from quasibgg.weyl import enumerate_weyl, weyl_element


def closure_roots(rd):
    """Root system by closing the simple roots under simple reflections (independent of positive_roots)."""
    roots = set(rd.simple_roots)
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            for i in range(rd.rank):
                s = rd.reflect(i, r)
                if s not in roots:
                    roots.add(s)
                    new.append(s)
        frontier = new
    return {r for r in roots if all(c >= 0 for c in rd.root_coords(r))}


def test_cartan_matrices():
    assert build_root_datum("A1").cartan == ((2,),)
    assert build_root_datum("A2").cartan == ((2, -1), (-1, 2))
    assert build_root_datum("B2").cartan == ((2, -1), (-2, 2))


def test_unknown_label():
    with pytest.raises(UnsupportedType):
        build_root_datum("A3")


@pytest.mark.parametrize("label,count", [("A1", 1), ("A2", 3), ("B2", 4)])
def test_positive_root_counts(label, count):
    rd = build_root_datum(label)
    assert len(positive_roots(rd)) == count
    assert set(map(tuple, positive_roots(rd))) == closure_roots(rd)


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_sum_of_positive_roots_is_two_rho(label):
    rd = build_root_datum(label)
    total = tuple(sum(c) for c in zip(*positive_roots(rd)))
    assert total == tuple(2 * x for x in rd.rho)


def test_dot_action_examples(A1, A2):
    assert dot_action(A1, weyl_element(A1, ()), (0,)) == (0,)
    assert dot_action(A1, weyl_element(A1, (0,)), (0,)) == (-2,)
    assert dot_action(A2, weyl_element(A2, (0,)), (0, 0)) == (-2, 1)


def test_regularity_examples(A1, A2):
    assert is_regular_dominant(A1, (2,))
    assert not is_dot_regular(A1, (-1,))
    assert dot_action(A1, weyl_element(A1, (0,)), (-1,)) == (-1,)
    assert is_regular_dominant(A2, (1, 0))
    assert is_dominant(A2, (0, 0)) and not is_dominant(A2, (-1, 0))


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_dot_action_is_an_action(label):
    rd = build_root_datum(label)
    elems = enumerate_weyl(rd).elements
    for lam in product(range(-2, 3), repeat=rd.rank):
        for w1 in elems:
            for w2 in elems:
                lhs = dot_action(rd, w1, dot_action(rd, w2, lam))
                rhs = dot_action(rd, weyl_element(rd, w1.word + w2.word), lam)
                assert lhs == rhs


def test_window(A2):
    win = A2.window((0, 0), 2)
    assert len(win) == 6
    assert A2.depth_below((0, 0), (-2, 1)) == 1
    assert A2.depth_below((0, 0), (1, 0)) is None


def test_parse_weight(A2):
    assert parse_weight(A2, "1,1") == (1, 1)
    with pytest.raises(ValueError):
        parse_weight(A2, "1")
    with pytest.raises(ValueError):
        parse_weight(A2, "x,1")
