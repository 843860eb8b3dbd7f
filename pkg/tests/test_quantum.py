from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasibgg.linalg import GF
from quasibgg.quantum import (
    A,
    V,
    LaurentScalar,
    audit_quantum_relations,
    binomial_by_division,
    cokernel,
    compare_specialization,
    quantum_binomial,
    quantum_integer,
    quantum_verma,
    quantum_weyl,
    quasi_bgg_rank1,
    quasi_embedding,
    quasi_verma_q,
    specialize_cyclotomic,
    unit_elimination,
)

laurent = st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=5).map(LaurentScalar)
points = st.sampled_from([Fraction(2), Fraction(1, 3), Fraction(-3), Fraction(5, 2)])


def q_int_at(n, v):
    return (v**n - v**-n) / (v - 1 / v)


def q_binom_at(n, k, v):
    """Product formula with [n]_v = (v^n - v^-n) / (v - v^-1), valid for any integer n."""
    out = Fraction(1)
    for t in range(k):
        out *= q_int_at(n - t, v) / q_int_at(t + 1, v)
    return out


def test_small_quantum_numbers():
    assert quantum_integer(2) == V + V.bar()
    assert quantum_integer(0) == LaurentScalar()
    assert quantum_integer(-3) == -quantum_integer(3)
    assert quantum_binomial(4, 2).at_one() == 6
    assert quantum_binomial(4, 2) == LaurentScalar({-4: 1, -2: 1, 0: 2, 2: 1, 4: 1})


@given(st.integers(-8, 12), st.integers(0, 6), points)
def test_binomial_matches_product_formula(n, k, v):
    assert quantum_binomial(n, k).evaluate(v) == q_binom_at(n, k, Fraction(v))


@given(st.integers(-6, 10), st.integers(0, 6))
def test_binomial_properties(n, k):
    b = quantum_binomial(n, k)
    assert b.bar() == b
    assert b.at_one() == (comb(n, k) if n >= 0 else (-1) ** k * comb(k - n - 1, k))
    if n >= 0:
        assert b == binomial_by_division(n, k)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).bar() == a.bar() * b.bar()
    assert a - a == LaurentScalar()


@given(laurent, laurent, points)
def test_evaluation_is_a_ring_map(a, b, v):
    assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)
    assert (a + b).evaluate(v) == a.evaluate(v) + b.evaluate(v)


@given(laurent, st.sampled_from([2, 3, 5, 7]))
def test_cyclotomic_routes_agree(a, p):
    assert sum(a.mod_cyclotomic(p)) % p == a.at_one() % p


@given(laurent, laurent)
def test_exact_division(a, b):
    if b:
        assert (a * b).exact_div(b) == a


def test_exact_division_fails_when_inexact():
    with pytest.raises(ArithmeticError):
        quantum_integer(3).exact_div(quantum_integer(2))
    with pytest.raises(ValueError):
        LaurentScalar.coerce(Fraction(1, 2))


def test_negative_powers():
    assert V**-2 * V**2 == LaurentScalar.coerce(1)
    assert (-V) ** -3 == LaurentScalar.monomial(-3, -1)
    with pytest.raises(ZeroDivisionError):
        quantum_integer(2) ** -1


def test_units():
    u = LaurentScalar.monomial(3, -1)
    assert u.is_unit() and u * u.unit_inverse() == LaurentScalar.coerce(1)
    with pytest.raises(ZeroDivisionError):
        quantum_integer(2).unit_inverse()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_quantum_integer_p_vanishes_mod_p(p):
    x = quantum_integer(p)
    assert GF(p)(x.at_one()) == 0
    # for odd p the exponents p-1, p-3, ..., 1-p cover every residue, so [p] is Phi_p itself
    assert x.mod_cyclotomic(p) == ((0,) * (p - 1) if p > 2 else (-2,))


def test_cyclotomic_value_at_one():
    phi3 = LaurentScalar({0: 1, 1: 1, 2: 1})
    assert phi3.at_one() == 3 and phi3.mod_cyclotomic(3) == (0, 0)


def test_quantum_verma_examples():
    m = quantum_verma(3, 8)
    assert m.field is A
    # E F^(4) v = [3 - 4 + 1] F^(3) v = 0
    assert not m.matrix(("E", 0, 1), (-5,))[0][0]
    assert m.matrix(("E", 0, 1), (-3,))[0][0] == quantum_integer(1)
    assert m.matrix(("F", 0, 2), (1,))[0][0] == quantum_binomial(3, 2)


@pytest.mark.parametrize("build", [lambda: quantum_verma(2, 8), lambda: quantum_weyl(3), lambda: quasi_verma_q(2, 10)])
def test_quantum_relations(build):
    assert audit_quantum_relations(build(), 8) == []


def test_quantum_weyl_rank():
    assert quantum_weyl(4).total_dim() == 5
    with pytest.raises(ValueError):
        quantum_weyl(-1)
    with pytest.raises(ValueError):
        quasi_verma_q(-2, 5)


def test_quasi_verma_top():
    q = quasi_verma_q(3, 10)
    assert q.top == (-5,) and q.total_dim() == 7


def test_unit_elimination_detects_non_units():
    two = quantum_integer(2)
    _, pivots, complete = unit_elimination([[two, quantum_integer(3)]])
    assert not complete and pivots == []
    _, pivots, complete = unit_elimination([[two, V]])
    assert complete and pivots == [1]


def test_cokernel_is_weyl_module():
    quotient, proj, certified = cokernel(quasi_embedding(3, 9))
    assert certified
    assert {mu: d for mu, d in quotient.dims.items() if d} == quantum_weyl(3).dims


@pytest.mark.parametrize("mu", range(5))
def test_quasi_bgg_rank1(mu):
    rep = quasi_bgg_rank1(mu, mu + 8)
    assert rep["ok"]
    for key in ("full_column_rank", "unit_elementary_divisors", "cokernel_is_weyl", "exact_over_A", "module_maps_ok"):
        assert rep[key], key
    assert not any(rep["relation_failures"].values())


def test_specialization_at_one_matches_classical():
    m = specialize_cyclotomic(quantum_verma(4, 8), 3)
    assert m.matrix(("F", 0, 3), (4,)) == [[comb(3, 3) % 3]]
    assert m.matrix(("F", 0, 1), (0,)) == [[comb(3, 1) % 3]]


@pytest.mark.parametrize("mu,p,depth", [(4, 3, 12), (2, 2, 12), (0, 2, 8), (6, 5, 14), (1, 3, 10)])
def test_compare_specialization(mu, p, depth):
    rep = compare_specialization(mu, p, depth)
    assert rep["match"] and rep["ok"]
    assert all(not v for v in rep["diffs"].values())


@pytest.mark.parametrize("mu,p", [(2, 3), (4, 5)])
def test_boundary_case_flagged(mu, p):
    rep = compare_specialization(mu, p, 12)
    assert rep["boundary"] and rep["ok"]
