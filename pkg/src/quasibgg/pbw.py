"""PBW straightening in U(g) over Z, and the localization of U(g) at one root vector.

Monomials are exponent tuples aligned with an ordering of the Chevalley basis.
Elements are dicts ``monomial -> int``.  Ordinary (not divided) monomials in
a Chevalley basis span the Z-form of U(g_Z), so all coefficients stay integral.
"""

from __future__ import annotations

from math import comb

from .lie import ChevalleyAlgebra


def add_into(acc: dict, other: dict, scale=1) -> dict:
    for k, v in other.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def gen_binomial(k: int, m: int) -> int:
    """C(k, m) for any integer k and m >= 0."""
    if k >= 0:
        return comb(k, m)
    return (-1) ** m * comb(m - k - 1, m)


class PBWAlgebra:
    def __init__(self, lie: ChevalleyAlgebra, order=None):
        self.lie = lie
        self.order = tuple(range(lie.dim) if order is None else order)
        if sorted(self.order) != list(range(lie.dim)):
            raise ValueError("order must be a permutation of the basis")
        self.pos = {a: k for k, a in enumerate(self.order)}
        self.n = lie.dim
        self._memo: dict = {}

    @property
    def one(self) -> tuple:
        return (0,) * self.n

    def generator(self, a: int) -> dict:
        m = [0] * self.n
        m[self.pos[a]] = 1
        return {tuple(m): 1}

    def monomial(self, exps: dict) -> tuple:
        m = [0] * self.n
        for a, e in exps.items():
            m[self.pos[a]] = e
        return tuple(m)

    def lmul_basis(self, a: int, mono: tuple) -> dict:
        """Normal form of x_a * mono."""
        key = (a, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        p = self.pos[a]
        j = next((k for k, e in enumerate(mono) if e), None)
        if j is None or p <= j:
            m = list(mono)
            m[p] += 1
            out = {tuple(m): 1}
        else:
            y = self.order[j]
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            out = {}
            # x y R = y (x R) + [x, y] R
            for m2, c in self.lmul_basis(a, rest).items():
                add_into(out, self.lmul_basis(y, m2), c)
            for z, c in self.lie.bracket(a, y).items():
                add_into(out, self.lmul_basis(z, rest), c)
        self._memo[key] = out
        return out

    def lmul(self, a: int, elem: dict) -> dict:
        out: dict = {}
        for m, c in elem.items():
            add_into(out, self.lmul_basis(a, m), c)
        return out

    def factors(self, mono: tuple) -> list:
        """Basis indices of the monomial read left to right."""
        out = []
        for k, e in enumerate(mono):
            out.extend([self.order[k]] * e)
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for mx, cx in x.items():
            cur = dict(y)
            for a in reversed(self.factors(mx)):
                cur = self.lmul(a, cur)
            add_into(out, cur, cx)
        return out

    def bracket(self, x: dict, y: dict) -> dict:
        return add_into(self.mul(x, y), self.mul(y, x), -1)

    def degree(self, mono: tuple) -> int:
        return sum(mono)

    def weight(self, mono: tuple) -> tuple:
        r = self.lie.rd.rank
        w = [0] * r
        for k, e in enumerate(mono):
            if e:
                wa = self.lie.weight(self.order[k])
                for i in range(r):
                    w[i] += e * wa[i]
        return tuple(w)


class LocalizedAlgebra:
    """U(g) localized at a negative root vector f, with PBW order putting f first.

    Monomials are exponent tuples whose first entry (the power of f) may be
    negative.  Left multiplication by f is free, and
    ``u f^k = sum_m C(k, m) (-1)^m f^(k - m) ad_f^m(u)`` moves f to the left.
    """

    def __init__(self, lie: ChevalleyAlgebra, f: int, order=None):
        if order is None:
            order = [f] + [a for a in range(lie.dim) if a != f]
        if order[0] != f:
            raise ValueError("the localized generator must come first")
        self.lie = lie
        self.f = f
        self.pbw = PBWAlgebra(lie, order)
        self._ad_memo: dict = {}

    def _split(self, mono):
        return mono[0], (0,) + tuple(mono[1:])

    def _ad_f_powers(self, rest: tuple) -> list:
        """[rest, ad_f(rest), ad_f^2(rest), ...] until zero."""
        hit = self._ad_memo.get(rest)
        if hit is not None:
            return hit
        fgen = self.pbw.generator(self.f)
        out = [{rest: 1}]
        cur = {rest: 1}
        while True:
            cur = self.pbw.bracket(fgen, cur)
            if not cur:
                break
            out.append(cur)
            if len(out) > 64:
                raise RuntimeError("ad_f is not nilpotent on this element")
        self._ad_memo[rest] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for mx, cx in x.items():
            a, rx = self._split(mx)
            for my, cy in y.items():
                b, ry = self._split(my)
                # (f^a rx)(f^b ry) = sum_m C(b,m)(-1)^m f^(a+b-m) ad^m(rx) ry
                for m, adm in enumerate(self._ad_f_powers(rx)):
                    c = gen_binomial(b, m) * (-1) ** m
                    if not c:
                        continue
                    prod = self.pbw.mul(adm, {ry: 1})
                    for mono, v in prod.items():
                        new = (mono[0] + a + b - m,) + tuple(mono[1:])
                        add_into(out, {new: v}, cx * cy * c)
        return out

    def element(self, u: dict) -> dict:
        """Embed an element of U(g) written in this algebra's PBW order."""
        return dict(u)

    def f_power(self, k: int) -> dict:
        return {(k,) + (0,) * (self.pbw.n - 1): 1}
