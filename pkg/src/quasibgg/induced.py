"""Exact action of g on induced modules and on their localizations at one root vector.

An induced module ``U(g) ⊗_{U(p)} N`` has the basis ``y ⊗ n`` where ``y`` runs
over ordered monomials in the negative root vectors outside the Levi factor
of ``p``.  Lie elements act by the recursion ``x y R = y (x R) + [x, y] R``;
every intermediate vector has weight at least the final one, so truncation
never interferes.  Lattice (Z-form) bases use divided powers; localized
monomials ``f^k`` with ``k < 0`` get the lattice basis ``(-k-1)! f^k``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .hyperalgebra import IntegralityError
from .lie import ChevalleyAlgebra
from .pbw import add_into, gen_binomial
from .truncated import TruncatedModule, gen_key


class HighestWeightLine:
    """One-dimensional module of the Borel subalgebra."""

    levi: frozenset = frozenset()

    def __init__(self, lie: ChevalleyAlgebra, lam):
        self.lie = lie
        self.top = tuple(lam)

    def labels(self, depth: int) -> list:
        return [0]

    def level(self, label) -> int:
        return 0

    def weight(self, label) -> tuple:
        return self.top

    def act(self, a: int, label) -> dict:
        lie = self.lie
        if lie.is_cartan(a):
            c = self.top[lie.labels[a][1]]
            return {0: c} if c else {}
        if lie.is_positive(a):
            return {}
        raise ValueError("negative root vectors do not act on the base line")


class Sl2LeviModule:
    """Verma or contragredient Verma for the Levi of ``p_i = b + C F_i``, trivial on the nilradical.

    ``kind == "verma"``: basis x_k = F_i^(k) w.   ``kind == "dual"``: basis f_k dual to x_k.
    """

    def __init__(self, lie: ChevalleyAlgebra, i: int, top, kind: str):
        if kind not in ("verma", "dual"):
            raise ValueError(kind)
        self.lie = lie
        self.i = i
        self.top = tuple(top)
        self.kind = kind
        self.levi = frozenset({i})
        self.t = self.top[i]

    def labels(self, depth: int) -> list:
        return list(range(depth + 1))

    def level(self, k) -> int:
        return k

    def weight(self, k) -> tuple:
        a = self.lie.rd.simple_roots[self.i]
        return tuple(x - k * y for x, y in zip(self.top, a))

    def act(self, a: int, k) -> dict:
        lie = self.lie
        if lie.is_cartan(a):
            c = self.weight(k)[lie.labels[a][1]]
            return {k: c} if c else {}
        if a == lie.e(self.i):
            if k == 0:
                return {}
            c = (self.t - k + 1) if self.kind == "verma" else k
            return {k - 1: c} if c else {}
        if a == lie.f(self.i):
            c = (k + 1) if self.kind == "verma" else (self.t - k)
            return {k + 1: c} if c else {}
        if lie.is_positive(a):
            return {}
        raise ValueError("element outside the parabolic subalgebra")


class InducedModule:
    def __init__(self, lie: ChevalleyAlgebra, base, first: int | None = None):
        self.lie = lie
        self.base = base
        levi = base.levi
        rd = lie.rd

        def in_levi(a):
            c = rd.root_coords(lie.labels[a][1])
            return all(x == 0 for j, x in enumerate(c) if j not in levi)

        comp = [a for a in range(lie.dim) if lie.is_negative(a) and not in_levi(a)]
        if first is not None:
            if first not in comp:
                raise ValueError("the first generator must lie in the complement")
            comp = [first] + [a for a in comp if a != first]
        self.comp = tuple(comp)
        self.pos = {a: k for k, a in enumerate(self.comp)}
        self.n = len(self.comp)
        self.top = base.top
        self._memo: dict = {}

    # -- action

    def act_basis(self, a: int, mono: tuple, label) -> dict:
        key = (a, mono, label)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        j = next((k for k, e in enumerate(mono) if e), None)
        p = self.pos.get(a)
        if p is not None and (j is None or p <= j):
            m = list(mono)
            m[p] += 1
            out = {(tuple(m), label): 1}
        elif j is None:
            out = {(mono, l2): c for l2, c in self.base.act(a, label).items()}
        else:
            y = self.comp[j]
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            out = {}
            for (m2, l2), c in self.act_basis(a, rest, label).items():
                add_into(out, self.act_basis(y, m2, l2), c)
            for z, c in self.lie.bracket(a, y).items():
                add_into(out, self.act_basis(z, rest, label), c)
        self._memo[key] = out
        return out

    def act(self, elem: dict, vec: dict) -> dict:
        """Lie element ``{basis index: coeff}`` applied to ``{(mono, label): coeff}``."""
        out: dict = {}
        for a, ca in elem.items():
            for (mono, label), c in vec.items():
                add_into(out, self.act_basis(a, mono, label), ca * c)
        return out

    def apply_monomial(self, mono: tuple, vec: dict) -> dict:
        """Ordinary monomial in the complement (read left to right) applied to ``vec``."""
        for k in range(self.n - 1, -1, -1):
            for _ in range(mono[k]):
                vec = self.act({self.comp[k]: 1}, vec)
        return vec

    # -- bookkeeping

    def weight(self, key) -> tuple:
        mono, label = key
        w = list(self.base.weight(label))
        for k, e in enumerate(mono):
            if e:
                wa = self.lie.weight(self.comp[k])
                for i in range(len(w)):
                    w[i] += e * wa[i]
        return tuple(w)

    def mono_height(self, mono) -> int:
        return sum(abs(e) * self.lie.height(self.comp[k]) for k, e in enumerate(mono))

    def scale(self, key) -> Fraction:
        """Lattice coordinate = ordinary coordinate * scale."""
        mono, _ = key
        s = Fraction(1)
        for e in mono:
            s *= factorial(e) if e >= 0 else Fraction(1, factorial(-e - 1))
        return s

    def monomials(self, budget: int, negative_first: bool = False) -> list:
        out = []

        def rec(k, acc, left):
            if k == self.n:
                out.append(tuple(acc))
                return
            h = self.lie.height(self.comp[k])
            if negative_first and k == 0:
                e = -1
                while h * (-e) <= left:
                    rec(k + 1, acc + [e], left - h * (-e))
                    e -= 1
                return
            e = 0
            while h * e <= left:
                rec(k + 1, acc + [e], left - h * e)
                e += 1

        rec(0, [], budget)
        return out

    def keys(self, depth: int) -> list:
        """Basis keys whose weight lies within ``depth`` of the top."""
        out = []
        for label in self.base.labels(depth):
            lev = self.base.level(label)
            for mono in self.monomials(depth - lev):
                out.append((mono, label))
        return out


class LocalizedQuotient:
    """``M_(f) / M`` for an induced module M whose complement order starts with ``f``."""

    def __init__(self, ind: InducedModule):
        self.ind = ind
        self.lie = ind.lie
        self.f = ind.comp[0]
        self._ad: dict = {}
        self._memo: dict = {}

    def ad_f_powers(self, a: int) -> list:
        hit = self._ad.get(a)
        if hit is None:
            hit = [{a: 1}]
            while True:
                nxt = self.lie.ad({self.f: 1}, hit[-1])
                if not nxt:
                    break
                hit.append(nxt)
            self._ad[a] = hit
        return hit

    def act_basis(self, a: int, mono: tuple, label) -> dict:
        key = (a, mono, label)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        k = mono[0]
        rest = (0,) + tuple(mono[1:])
        out: dict = {}
        # x f^k = sum_m C(k, m) (-1)^m f^(k - m) ad_f^m(x)
        for m, adm in enumerate(self.ad_f_powers(a)):
            c = gen_binomial(k, m) * (-1) ** m
            if not c:
                continue
            for (m2, l2), v in self.ind.act(adm, {(rest, label): 1}).items():
                e = m2[0] + k - m
                if e < 0:
                    add_into(out, {((e,) + tuple(m2[1:]), l2): v}, c)
        self._memo[key] = out
        return out

    def act(self, elem: dict, vec: dict) -> dict:
        out: dict = {}
        for a, ca in elem.items():
            for (mono, label), c in vec.items():
                add_into(out, self.act_basis(a, mono, label), ca * c)
        return out

    def weight(self, key) -> tuple:
        return self.ind.weight(key)

    def scale(self, key) -> Fraction:
        return self.ind.scale(key)


def realize(engine, keys_by_weight: dict, rd, top, depth: int, field, sigma=None, relabel=None, name: str = "", max_power=None) -> TruncatedModule:
    """Tabulate E_i^(n), F_i^(n) on the lattice basis given by ``keys_by_weight`` (new weights).

    ``sigma`` maps a Lie basis index to the Lie element that actually acts
    (a twist), ``relabel`` maps engine weights to module weights.
    """
    lie = engine.lie
    relabel = relabel or (lambda mu: mu)
    index = {mu: {key: k for k, key in enumerate(keys)} for mu, keys in keys_by_weight.items()}
    action: dict = {}
    for i in range(rd.rank):
        for kind, a in (("E", lie.e(i)), ("F", lie.f(i))):
            x = sigma[a] if sigma is not None else {a: 1}
            for mu, keys in keys_by_weight.items():
                for col, key in enumerate(keys):
                    vec = {key: 1 / engine.scale(key)}
                    n = 0
                    target = mu
                    while True:
                        n += 1
                        target = tuple(t + (1 if kind == "E" else -1) * s for t, s in zip(target, rd.simple_roots[i]))
                        if max_power is not None and n > max_power:
                            break
                        d = rd.depth_below(top, target)
                        if d is None or d > depth:
                            break
                        vec = engine.act(x, vec)
                        if not vec:
                            break
                        gen = gen_key(kind, i, n)
                        tidx = index.get(target, {})
                        blocks = action.setdefault(gen, {})
                        mat = blocks.get(mu)
                        if mat is None:
                            mat = blocks[mu] = [[field(0)] * len(keys) for _ in range(len(keys_by_weight.get(target, ())))]
                        fact = factorial(n)
                        for k2, c in vec.items():
                            if relabel(engine.weight(k2)) != target:
                                raise AssertionError("weight bookkeeping failed")
                            row = tidx.get(k2)
                            if row is None:
                                raise AssertionError(f"basis key {k2} missing from the window")
                            val = Fraction(c) * engine.scale(k2) / fact
                            if val.denominator != 1:
                                raise IntegralityError(f"non-integral action coefficient {val} for {kind}{i + 1}^({n})")
                            mat[row][col] = field(int(val))
    # make sure every generator that appeared has blocks for all sources with a known target
    dims = {mu: len(keys) for mu, keys in keys_by_weight.items() if keys}
    basis = {mu: list(keys) for mu, keys in keys_by_weight.items() if keys}
    return TruncatedModule(rd, field, tuple(top), depth, dims, action, basis, name, engine)
