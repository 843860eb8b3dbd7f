"""Weyl groups at rank <= 2: canonical reduced words, Bruhat order, chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .linalg import QQ, inverse
from .rootdata import DEFAULT_W0_WORD, RootDatum


class DomainMismatch(ValueError):
    pass


def _reflection_matrix(rd: RootDatum, i: int) -> tuple:
    # s_i(mu)_j = mu_j - mu_i * cartan[i][j]; columns indexed by input coordinate
    r = rd.rank
    return tuple(tuple(int(j == k) - (k == i) * rd.cartan[i][j] for k in range(r)) for j in range(r))


def _matmul(a, b) -> tuple:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(r: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def word_matrix(rd: RootDatum, word) -> tuple:
    m = _identity(rd.rank)
    for i in word:
        m = _matmul(m, _reflection_matrix(rd, i))
    return m


def word_name(word) -> str:
    return "".join(f"s{i + 1}" for i in word) or "e"


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "e"):
        return ()
    parts = text.split(",") if "," in text else text.split("s")[1:]
    return tuple(int(p.strip().lstrip("s")) - 1 for p in parts)


@dataclass(frozen=True)
class WeylElement:
    word: tuple
    matrix: tuple
    rd: RootDatum = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def name(self) -> str:
        return word_name(self.word)

    def __repr__(self):
        return f"WeylElement({self.name})"

    def apply(self, mu) -> tuple:
        return tuple(sum(self.matrix[j][k] * mu[k] for k in range(len(mu))) for j in range(len(mu)))


def weyl_element(rd: RootDatum, word) -> WeylElement:
    word = tuple(word)
    return WeylElement(word, word_matrix(rd, word), rd)


@dataclass
class BruhatPoset:
    rd: RootDatum
    w0_word: tuple
    elements: list
    covers: list  # pairs of indices (i, j) with elements[i] < elements[j], lengths differing by one

    @cached_property
    def _index(self) -> dict:
        return {w.matrix: k for k, w in enumerate(self.elements)}

    def index(self, w: WeylElement) -> int:
        if w.rd != self.rd:
            raise DomainMismatch(f"{w} belongs to {w.rd.label}, not {self.rd.label}")
        try:
            return self._index[w.matrix]
        except KeyError:
            raise DomainMismatch(f"{w} is not an element of this poset") from None

    def canonical(self, w: WeylElement) -> WeylElement:
        return self.elements[self.index(w)]

    def element(self, word) -> WeylElement:
        return self.canonical(weyl_element(self.rd, word))

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @cached_property
    def _closure(self) -> set:
        n = len(self.elements)
        up = {i: set() for i in range(n)}
        for i, j in self.covers:
            up[i].add(j)
        reach = set()
        for i in range(n):
            stack, seen = [i], {i}
            while stack:
                k = stack.pop()
                for j in up[k]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            reach.update((i, j) for j in seen)
        return reach

    def leq_closure(self, w1, w2) -> bool:
        return (self.index(w1), self.index(w2)) in self._closure

    def squares(self) -> list[tuple]:
        """Intervals [u, v] with l(v) = l(u) + 2, as (u, a, b, v) index tuples."""
        up: dict[int, set] = {}
        for i, j in self.covers:
            up.setdefault(i, set()).add(j)
        out = []
        for u in range(len(self.elements)):
            tops: dict[int, list] = {}
            for a in sorted(up.get(u, ())):
                for v in sorted(up.get(a, ())):
                    tops.setdefault(v, []).append(a)
            for v, mids in sorted(tops.items()):
                if len(mids) != 2:
                    raise AssertionError("length-two Bruhat interval without exactly two atoms")
                out.append((u, mids[0], mids[1], v))
        return out

    def to_json(self) -> dict:
        return {
            "elements": [w.name for w in self.elements],
            "covers": [list(c) for c in self.covers],
        }


def _reduced_subword_positions(word, target_matrix, rd, length):
    for pos in combinations(range(len(word)), length):
        sub = tuple(word[p] for p in pos)
        if word_matrix(rd, sub) == target_matrix:
            yield sub


def enumerate_weyl(rd: RootDatum, w0_word=None) -> BruhatPoset:
    # breadth-first search over words; first hit gives the length
    lengths: dict = {_identity(rd.rank): 0}
    frontier = [_identity(rd.rank)]
    gens = [_reflection_matrix(rd, i) for i in range(rd.rank)]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                m2 = _matmul(m, g)
                if m2 not in lengths:
                    lengths[m2] = lengths[m] + 1
                    nxt.append(m2)
        frontier = nxt
    w0_word = tuple(DEFAULT_W0_WORD[rd.label] if w0_word is None else w0_word)
    top = max(lengths.values())
    if len(w0_word) != top or lengths.get(word_matrix(rd, w0_word)) != top:
        raise ValueError(f"{word_name(w0_word)} is not a reduced word for the longest element")
    elements = []
    for m, ell in lengths.items():
        word = next(_reduced_subword_positions(w0_word, m, rd, ell))
        elements.append(WeylElement(word, m, rd))
    # order: by length, then by position pattern within the w0 word
    elements.sort(key=lambda w: (w.length, _subword_key(w0_word, w.word)))
    # covers via reflections: w < w t with l(wt) = l(w) + 1
    reflections = set()
    for w in elements:
        for g in gens:
            reflections.add(_matmul(_matmul(w.matrix, g), _inverse_perm(w.matrix)))
    index = {w.matrix: k for k, w in enumerate(elements)}
    covers = []
    for k, w in enumerate(elements):
        for t in sorted(reflections):
            m2 = _matmul(w.matrix, t)
            if lengths[m2] == w.length + 1:
                covers.append((k, index[m2]))
    covers = sorted(set(covers))
    return BruhatPoset(rd, w0_word, elements, covers)


def _subword_key(w0_word, word):
    for pos in combinations(range(len(w0_word)), len(word)):
        if tuple(w0_word[p] for p in pos) == word:
            return pos
    return ()


def _inverse_perm(m):
    inv = inverse([[Fraction(x) for x in row] for row in m], QQ)
    return tuple(tuple(int(x) for x in row) for row in inv)


def bruhat_leq(p: BruhatPoset, w1: WeylElement, w2: WeylElement) -> bool:
    """Subword criterion against the canonical reduced word of ``w2``."""
    p.index(w1)
    word = p.canonical(w2).word
    ell = p.canonical(w1).length
    return next(_reduced_subword_positions(word, w1.matrix, p.rd, ell), None) is not None


def chain_to_identity(w: WeylElement) -> list:
    """v_0 = w, v_1, ..., v_l = e by dropping letters from the right."""
    return [weyl_element(w.rd, w.word[:k]) for k in range(len(w.word), -1, -1)]


def longest_element(p: BruhatPoset) -> WeylElement:
    return max(p.elements, key=lambda w: w.length)


def poincare_counts(p: BruhatPoset) -> list[int]:
    top = longest_element(p).length
    counts = [0] * (top + 1)
    for w in p.elements:
        counts[w.length] += 1
    return counts
