"""Independent reference implementations used across the tests."""

from itertools import combinations, product

from quasibgg.weyl import weyl_element


def all_reduced_words(rd, w, max_len=4):
    return [word for n in range(max_len + 1) for word in product(range(rd.rank), repeat=n) if len(word) == w.length and weyl_element(rd, word) == w]


def subword_leq(rd, u, w):
    """u <= w iff a reduced word of u is a subword of some reduced word of w."""
    for word in all_reduced_words(rd, w):
        for k in range(len(word) + 1):
            for pos in combinations(range(len(word)), k):
                sub = tuple(word[p] for p in pos)
                if len(sub) == u.length and weyl_element(rd, sub) == u:
                    return True
    return False


def sl2_verma_e(lam, n):
    """Coefficient c with E F^(n) v = c F^(n-1) v, from E F^n v = n (lam - n + 1) F^(n-1) v."""
    return lam - n + 1
