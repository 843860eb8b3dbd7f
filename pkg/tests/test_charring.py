from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasibgg.charring import (
    FormalCharacter,
    TruncationMismatch,
    char_equal_truncated,
    euler_characteristic,
    kostant_partition,
    verma_character,
    weyl_character,
    weyl_dimension,
)
from quasibgg.rootdata import build_root_datum, dot_action, positive_roots
from quasibgg.weyl import enumerate_weyl


def brute_partitions(rd, beta):
    """Count decompositions by enumerating coefficient vectors for each positive root."""
    roots = [rd.root_coords(a) for a in positive_roots(rd)]
    bound = sum(beta)
    count = 0
    for coeffs in product(range(bound + 1), repeat=len(roots)):
        if tuple(sum(c * r[k] for c, r in zip(coeffs, roots)) for k in range(rd.rank)) == tuple(beta):
            count += 1
    return count


def kostant_multiplicity(rd, lam, mu):
    """Multiplicity of mu in L(lam) by Kostant's alternating formula."""
    total = 0
    for w in enumerate_weyl(rd).elements:
        nu = dot_action(rd, w, lam)
        diff = tuple(a - b for a, b in zip(nu, mu))
        beta = rd.root_coords(diff)
        if any(x < 0 for x in beta):
            continue
        total += (-1) ** w.length * brute_partitions(rd, beta)
    return total


def test_kostant_examples(A1, A2):
    assert all(kostant_partition(A1, (n,)) == 1 for n in range(8))
    assert kostant_partition(A2, (1, 1)) == 2
    assert kostant_partition(A2, (0, 0)) == 1
    with pytest.raises(ValueError):
        kostant_partition(A2, (-1, 0))


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_partition_function_matches_brute_force(label):
    rd = build_root_datum(label)
    for beta in product(range(5), repeat=2):
        assert kostant_partition(rd, beta) == brute_partitions(rd, beta)


def test_verma_character_examples(A1, A2):
    ch = verma_character(A1, (0,), 5)
    assert ch.mults == {(-2 * k,): 1 for k in range(6)}
    ch = verma_character(A2, (0, 0), 2)
    assert ch.total() == 7
    assert ch[(0, 0)] == 1
    assert ch[A2.from_root_coords((1, 1)) if False else (-1, -1)] == 2


@pytest.mark.parametrize("label,lam,dim", [("A1", (2,), 3), ("A1", (0,), 1), ("A2", (1, 0), 3), ("A2", (1, 1), 8), ("B2", (1, 0), 4), ("B2", (0, 1), 5), ("B2", (1, 1), 16)])
def test_weyl_dimension(label, lam, dim):
    rd = build_root_datum(label)
    assert weyl_dimension(rd, lam) == dim
    assert weyl_character(rd, lam).total() == dim


@pytest.mark.parametrize("label,lam", [("A1", (3,)), ("A2", (2, 1)), ("A2", (1, 1)), ("B2", (1, 1)), ("B2", (2, 0))])
def test_weyl_character_matches_kostant_formula(label, lam):
    rd = build_root_datum(label)
    ch = weyl_character(rd, lam)
    for mu in rd.window(lam, 8):
        assert ch[mu] == kostant_multiplicity(rd, lam, mu), mu


@pytest.mark.parametrize("label,lam", [("A2", (2, 1)), ("B2", (1, 2))])
def test_weyl_character_is_w_invariant(label, lam):
    rd = build_root_datum(label)
    ch = weyl_character(rd, lam)
    for w in enumerate_weyl(rd).elements:
        for mu, m in ch.mults.items():
            assert ch[w.apply(mu)] == m


def test_weyl_character_rejects_nondominant(A2):
    with pytest.raises(ValueError):
        weyl_character(A2, (-1, 0))


def test_euler_examples(A1, A2):
    assert char_equal_truncated(euler_characteristic(A1, (2,), 10), weyl_character(A1, (2,)).restricted((2,), 10), 10)
    e = euler_characteristic(A2, (1, 1), 8)
    assert {mu: m for mu, m in e.mults.items() if m} == weyl_character(A2, (1, 1)).mults
    assert {mu: m for mu, m in euler_characteristic(A1, (0,), 10).mults.items() if m} == {(0,): 1}


def test_char_equal_truncated_examples(A1):
    a = verma_character(A1, (0,), 5)
    assert char_equal_truncated(a, verma_character(A1, (0,), 5), 5)
    assert not char_equal_truncated(a, verma_character(A1, (-2,), 5), 5)


def test_depth_mismatch_is_loud(A1):
    with pytest.raises(TruncationMismatch):
        char_equal_truncated(verma_character(A1, (0,), 2), verma_character(A1, (0,), 6), 6)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2"]), st.integers(0, 6))
def test_verma_character_is_product_expansion(label, depth):
    """Coefficient of e^(lam - beta) in prod_alpha 1/(1 - e^-alpha), by iterated series multiplication."""
    rd = build_root_datum(label)
    lam = rd.zero
    series = {tuple([0] * rd.rank): 1}
    for a in positive_roots(rd):
        c = rd.root_coords(a)
        new = {}
        for beta, m in series.items():
            k = 0
            while True:
                b2 = tuple(x + k * y for x, y in zip(beta, c))
                if sum(b2) > depth:
                    break
                new[b2] = new.get(b2, 0) + m
                k += 1
        series = new
    ch = verma_character(rd, lam, depth)
    for beta, m in series.items():
        mu = tuple(x - y for x, y in zip(lam, rd.from_root_coords(beta)))
        assert ch[mu] == m
    assert ch.total() == sum(series.values())


def test_formal_character_serializes(A1):
    ch = verma_character(A1, (1,), 2)
    assert ch.to_json()["weights"] == [[[1], 1], [[-1], 1], [[-3], 1]]
    assert ch.to_csv().splitlines()[0] == "c1,multiplicity"
    assert isinstance(ch - ch, FormalCharacter)
