import pytest

from quasibgg.rootdata import build_root_datum, dot_action, is_dominant
from oracles import subword_leq
from quasibgg.weyl import (
    DomainMismatch,
    bruhat_leq,
    chain_to_identity,
    enumerate_weyl,
    longest_element,
    parse_word,
    poincare_counts,
    weyl_element,
)


@pytest.mark.parametrize("label,size,counts", [("A1", 2, [1, 1]), ("A2", 6, [1, 2, 2, 1]), ("B2", 8, [1, 2, 2, 2, 1])])
def test_enumeration(label, size, counts):
    p = enumerate_weyl(build_root_datum(label))
    assert len(p.elements) == size
    assert poincare_counts(p) == counts
    for w in p.elements:
        assert len(w.word) == w.length


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_bruhat_matches_subword_oracle(label):
    rd = build_root_datum(label)
    p = enumerate_weyl(rd)
    for u in p.elements:
        for w in p.elements:
            expected = subword_leq(rd, u, w)
            assert bruhat_leq(p, u, w) == expected
            assert p.leq_closure(u, w) == expected


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_covers_are_length_one_steps(label):
    rd = build_root_datum(label)
    p = enumerate_weyl(rd)
    cov = set(p.covers)
    for i, u in enumerate(p.elements):
        for j, w in enumerate(p.elements):
            if w.length == u.length + 1 and subword_leq(rd, u, w):
                assert (i, j) in cov
    for i, j in cov:
        assert p.elements[j].length == p.elements[i].length + 1


def test_bruhat_examples(A2):
    p = enumerate_weyl(A2)
    s1, s2, s1s2 = (weyl_element(A2, w) for w in [(0,), (1,), (0, 1)])
    assert bruhat_leq(p, s1, s1s2)
    assert not bruhat_leq(p, s1, s2)
    assert all(bruhat_leq(p, p.identity, w) for w in p.elements)


def test_domain_mismatch(A2, B2):
    with pytest.raises(DomainMismatch):
        bruhat_leq(enumerate_weyl(A2), weyl_element(B2, (0,)), weyl_element(A2, (0,)))


def test_chains(A2):
    e = weyl_element(A2, ())
    assert chain_to_identity(e) == [e]
    names = [w.name for w in chain_to_identity(weyl_element(A2, (0, 1)))]
    assert names == ["s1s2", "s1", "e"]
    w0 = longest_element(enumerate_weyl(A2))
    assert [w.name for w in chain_to_identity(w0)] == ["s1s2s1", "s1s2", "s1", "e"]


@pytest.mark.parametrize("label,ell", [("A1", 1), ("A2", 3), ("B2", 4)])
def test_longest(label, ell):
    rd = build_root_datum(label)
    w0 = longest_element(enumerate_weyl(rd))
    assert w0.length == ell
    assert weyl_element(rd, w0.word + w0.word) == weyl_element(rd, ())
    lam = tuple([1] * rd.rank)
    assert all(x < 0 for x in w0.apply(lam))


def test_w0_is_s1s2s1_and_s2s1s2(A2):
    assert weyl_element(A2, (0, 1, 0)) == weyl_element(A2, (1, 0, 1))


def test_alternative_word_gives_same_order(A2):
    p, q = enumerate_weyl(A2), enumerate_weyl(A2, (1, 0, 1))
    assert {w for w in p.elements} == {w for w in q.elements}
    for u in p.elements:
        for w in p.elements:
            assert bruhat_leq(p, u, w) == bruhat_leq(q, u, w)


@pytest.mark.parametrize("label,nsq", [("A1", 0), ("A2", 2), ("B2", 4)])
def test_squares_are_all_length_two_intervals(label, nsq):
    rd = build_root_datum(label)
    p = enumerate_weyl(rd)
    # every interval [u, v] of length 2 in a Bruhat order has exactly two middle elements
    intervals = set()
    for u in range(len(p.elements)):
        for v in range(len(p.elements)):
            if p.elements[v].length == p.elements[u].length + 2 and p.leq_closure(p.elements[u], p.elements[v]):
                intervals.add((u, v))
    sq = p.squares()
    assert {(u, v) for u, a, b, v in sq} == intervals
    assert all(len({a, b}) == 2 for _, a, b, _ in sq)


def test_parse_word():
    assert parse_word("s1s2") == (0, 1)
    assert parse_word("e") == ()
    assert parse_word("1,2,1") == (0, 1, 0)


def test_dot_orbit_has_one_dominant_weight(A2):
    p = enumerate_weyl(A2)
    orbit = {dot_action(A2, w, (1, 1)) for w in p.elements}
    assert len(orbit) == 6
    assert [mu for mu in orbit if is_dominant(A2, mu)] == [(1, 1)]
