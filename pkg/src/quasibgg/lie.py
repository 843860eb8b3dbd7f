"""Chevalley bases of sl2, sl3 and sp4 with exact integer structure constants.

The algebra is realized by matrices; root vectors for non-simple roots are
nested brackets of simple ones divided by the root-string factor, and the
negative root vectors are transposes.  Structure constants are read off by
decomposing brackets in the basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache

from .linalg import QQ, inverse, solve
from .rootdata import DEFAULT_W0_WORD, RootDatum, build_root_datum, positive_roots
from .weyl import weyl_element


def _unit(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _add(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _bracket(a, b):
    return _add(_mul(a, b), _mul(b, a), -1)


def _scale(a, s):
    return [[x * s for x in row] for row in a]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _is_zero(a):
    return all(x == 0 for row in a for x in row)


def _simple_matrices(label):
    if label == "A1":
        return 2, [_unit(2, 0, 1)]
    if label == "A2":
        return 3, [_unit(3, 0, 1), _unit(3, 1, 2)]
    if label == "B2":
        # sp4: short simple root first, long simple root second
        return 4, [_add(_unit(4, 0, 1), _unit(4, 2, 3), -1), _unit(4, 1, 2)]
    raise ValueError(label)


def convex_order(rd: RootDatum, w0_word=None) -> list:
    """Positive roots beta_k = s_{i1}...s_{i(k-1)}(alpha_{ik}) read off a reduced word of w0."""
    word = tuple(DEFAULT_W0_WORD[rd.label] if w0_word is None else w0_word)
    out = []
    for k, i in enumerate(word):
        w = weyl_element(rd, word[:k])
        out.append(w.apply(rd.simple_roots[i]))
    return out


class ChevalleyAlgebra:
    """Basis order: negative roots (convex order), coroots H_1..H_r, positive roots (convex order)."""

    def __init__(self, rd: RootDatum, w0_word=None):
        self.rd = rd
        self.w0_word = tuple(DEFAULT_W0_WORD[rd.label] if w0_word is None else w0_word)
        self.pos_roots = convex_order(rd, self.w0_word)
        r = rd.rank
        n = len(self.pos_roots)
        self.labels = [("F", b) for b in self.pos_roots] + [("H", i) for i in range(r)] + [("E", b) for b in self.pos_roots]
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.num_pos = n
        self._build(rd)

    # -- construction

    def _build(self, rd):
        size, simple = _simple_matrices(rd.label)
        emats = {}
        for i, m in enumerate(simple):
            emats[rd.simple_roots[i]] = m
        by_height = sorted(positive_roots(rd), key=lambda b: sum(rd.root_coords(b)))
        roots = set(by_height)
        for beta in by_height:
            if beta in emats:
                continue
            for i in range(rd.rank):
                gamma = tuple(b - a for b, a in zip(beta, rd.simple_roots[i]))
                if gamma in roots and gamma in emats:
                    p = 0
                    while tuple(g - (p + 1) * a for g, a in zip(gamma, rd.simple_roots[i])) in roots:
                        p += 1
                    emats[beta] = _scale(_bracket(emats[rd.simple_roots[i]], emats[gamma]), Fraction(1, p + 1))
                    break
        mats = {}
        for beta in self.pos_roots:
            mats[("E", beta)] = emats[beta]
            mats[("F", beta)] = _transpose(emats[beta])
        for i in range(rd.rank):
            b = rd.simple_roots[i]
            mats[("H", i)] = _bracket(mats[("E", b)], mats[("F", b)])
        self._mats = [mats[lab] for lab in self.labels]
        self.size = size
        self.structure = {}
        for a in range(self.dim):
            for b in range(self.dim):
                self.structure[(a, b)] = self._decompose(_bracket(self._mats[a], self._mats[b]), self.weight(a), self.weight(b))
        for beta in self.pos_roots:
            e, f = self.index[("E", beta)], self.index[("F", beta)]
            h = self.structure[(e, f)]
            # [E_beta, F_beta] must be the coroot: beta(h) = 2
            val = sum(c * self.pairing(beta, self.labels[k][1]) for k, c in h.items())
            if val != 2:
                raise AssertionError(f"root vector for {beta} is not Chevalley-normalized")

    def pairing(self, beta, i) -> int:
        """beta(H_i) = <beta, alpha_i check> = i-th fundamental coordinate."""
        return beta[i]

    def _decompose(self, m, wa, wb) -> dict:
        if _is_zero(m):
            return {}
        wt = tuple(x + y for x, y in zip(wa, wb))
        if any(wt):
            for lab in (("E", wt), ("F", tuple(-x for x in wt))):
                if lab in self.index:
                    ref = self._mats[self.index[lab]]
                    i, j = next((i, j) for i in range(self.size) for j in range(self.size) if ref[i][j])
                    c = Fraction(m[i][j]) / ref[i][j]
                    if _add(m, _scale(ref, c), -1) != [[0] * self.size for _ in range(self.size)]:
                        raise AssertionError("bracket is not a multiple of a root vector")
                    return {self.index[lab]: _as_int(c)}
            raise AssertionError(f"bracket of weight {wt} is not a root")
        # Cartan part: solve on the diagonal

        hs = [self.index[("H", i)] for i in range(self.rd.rank)]
        a = [[Fraction(self._mats[h][d][d]) for h in hs] for d in range(self.size)]
        x = solve(a, [Fraction(m[d][d]) for d in range(self.size)], QQ)
        return {h: _as_int(c) for h, c in zip(hs, x) if c}

    # -- queries

    def weight(self, a: int) -> tuple:
        kind, data = self.labels[a]
        if kind == "E":
            return tuple(data)
        if kind == "F":
            return tuple(-x for x in data)
        return (0,) * self.rd.rank

    def bracket(self, a: int, b: int) -> dict:
        return self.structure[(a, b)]

    def e(self, i: int) -> int:
        return self.index[("E", self.rd.simple_roots[i])]

    def f(self, i: int) -> int:
        return self.index[("F", self.rd.simple_roots[i])]

    def h(self, i: int) -> int:
        return self.index[("H", i)]

    def is_negative(self, a: int) -> bool:
        return self.labels[a][0] == "F"

    def is_positive(self, a: int) -> bool:
        return self.labels[a][0] == "E"

    def is_cartan(self, a: int) -> bool:
        return self.labels[a][0] == "H"

    def name(self, a: int) -> str:
        kind, data = self.labels[a]
        if kind == "H":
            return f"H{data + 1}"
        c = self.rd.root_coords(data)
        if sum(c) == 1:
            return f"{kind}{c.index(1) + 1}"
        return kind + "_" + "".join(str(x) for x in c)

    def height(self, a: int) -> int:
        kind, data = self.labels[a]
        return 0 if kind == "H" else sum(self.rd.root_coords(data))

    def ad(self, x: dict, y: dict) -> dict:
        """Bracket of Lie elements given as {basis index: coefficient}."""
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in self.structure[(a, b)].items():
                    out[c] = out.get(c, 0) + ca * cb * cc
        return {k: v for k, v in out.items() if v}

    def ad_power(self, x: dict, y: dict, m: int) -> dict:
        for _ in range(m):
            y = self.ad(x, y)
        return y

    def matrix_of(self, a: int):
        return self._mats[a]

    @cached_property
    def structure_signs(self) -> list:
        """Nonzero brackets among root vectors, recorded for reproducibility."""
        out = []
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                if self.is_cartan(a) or self.is_cartan(b):
                    continue
                for c, v in sorted(self.structure[(a, b)].items()):
                    out.append([self.name(a), self.name(b), self.name(c), v])
        return out

    # -- automorphisms

    @lru_cache(maxsize=None)
    def reflection_automorphism(self, i: int) -> tuple:
        """Ad of exp(E_i) exp(-F_i) exp(E_i), as images of basis elements."""
        e = self._mats[self.e(i)]
        f = self._mats[self.f(i)]

        def expo(m, s):
            out = [[Fraction(int(r == c)) for c in range(self.size)] for r in range(self.size)]
            term = [[Fraction(int(r == c)) for c in range(self.size)] for r in range(self.size)]
            k = 1
            while True:
                term = _scale(_mul(term, m), Fraction(s, k))
                if _is_zero(term):
                    return out
                out = _add(out, term)
                k += 1

        g = _mul(_mul(expo(e, 1), expo(f, -1)), expo(e, 1))

        ginv = inverse(g, QQ)
        images = []
        for a in range(self.dim):
            m = _mul(_mul(g, self._mats[a]), ginv)
            wt = self.rd.reflect(i, self.weight(a)) if not self.is_cartan(a) else (0,) * self.rd.rank
            if self.is_cartan(a):
                images.append(self._decompose(m, wt, wt))
            else:
                images.append(self._decompose(m, wt, (0,) * self.rd.rank))
        return tuple(images)

    def automorphism(self, word) -> tuple:
        """Composite Ad for the lift of s_{i1} ... s_{ik} (applied right to left on elements)."""
        images = tuple({a: 1} for a in range(self.dim))
        for i in word:
            step = self.reflection_automorphism(i)
            # new(a) = previous(step(a)) keeps the composite as Ad(g1) ... Ad(gk)
            images = tuple(self._apply_images(images, step[a]) for a in range(self.dim))
        return images

    def _apply_images(self, images, elem: dict) -> dict:
        out: dict = {}
        for a, c in elem.items():
            for b, d in images[a].items():
                out[b] = out.get(b, 0) + c * d
        return {k: v for k, v in out.items() if v}

    def apply_automorphism(self, images, elem: dict) -> dict:
        return self._apply_images(images, elem)


def _as_int(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else c


@lru_cache(maxsize=None)
def chevalley_algebra(label: str, w0_word=None) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(build_root_datum(label), w0_word)
