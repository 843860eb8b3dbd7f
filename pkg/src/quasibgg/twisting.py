"""Semiregular modules, twisting functors and quasi-Verma modules.

For a simple reflection s_j the semiregular bimodule of the one-dimensional
nilpotent subalgebra spanned by F_j is the quotient U_(F_j) / U of the
localization by U itself; the dual basis element delta_n of C[F_j]* matches
F_j^(-n-1).  Tensoring an induced module with it gives the localized
quotient M_(F_j) / M, and the grading twist relabels weights by s_j and lets
g act through the Chevalley lift of s_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .hyperalgebra import AlgebraElement, _to_ordinary
from .induced import InducedModule, LocalizedQuotient, realize
from .lie import ChevalleyAlgebra, chevalley_algebra
from .linalg import QQ, SubspaceCoordinates, nullspace, transpose
from .modules import change_field, verma
from .pbw import LocalizedAlgebra, PBWAlgebra, add_into, gen_binomial
from .rootdata import RootDatum, dot_action
from .truncated import TruncatedModule, gen_key
from .weyl import WeylElement, enumerate_weyl, longest_element, weyl_element


class UnsupportedTwist(ValueError):
    pass


# ---------------------------------------------------------------- localization


def _local_algebra(lie: ChevalleyAlgebra, f: int) -> LocalizedAlgebra:
    return _local_cached(lie, f)


@lru_cache(maxsize=None)
def _local_cached(lie, f):
    return LocalizedAlgebra(lie, f)


def to_local(loc: LocalizedAlgebra, u) -> dict:
    """Embed an element of U(g) (AlgebraElement or ordinary dict in the global order) into ``loc``."""
    lie = loc.lie
    ordinary = _to_ordinary(lie, u) if isinstance(u, AlgebraElement) else u
    glob = PBWAlgebra(lie)
    out: dict = {}
    one = (0,) * lie.dim
    for mono, c in ordinary.items():
        cur = {one: Fraction(1)}
        for a in reversed(glob.factors(mono)):
            cur = loc.mul(loc.pbw.generator(a), cur)
        add_into(out, cur, c)
    return out


def localized_commutator(u, e: int, lie: ChevalleyAlgebra, bound: int = 64) -> tuple:
    """``[e^-1, u] = -sum_{m>=1} e^(-1-m) ad_e^m(u)``; returns (element of the localization, series length).

    The series length counts the nonzero ``ad_e^m(u)`` for m >= 0, i.e. the nilpotency degree.
    """
    loc = _local_algebra(lie, e)
    x = to_local(loc, u)
    powers = [x]
    fgen = loc.pbw.generator(e)
    while True:
        nxt = loc.pbw.bracket(fgen, powers[-1])
        if not nxt:
            break
        powers.append(nxt)
        if len(powers) > bound:
            raise RuntimeError("ad_e is not nilpotent within the bound")
    out: dict = {}
    for m in range(1, len(powers)):
        add_into(out, loc.mul(loc.f_power(-1 - m), powers[m]), -1)
    return out, len(powers)


def local_commutator_direct(u, e: int, lie: ChevalleyAlgebra) -> dict:
    loc = _local_algebra(lie, e)
    x = to_local(loc, u)
    inv = loc.f_power(-1)
    return add_into(loc.mul(inv, x), loc.mul(x, inv), -1)


# ---------------------------------------------------------------- nilpotent filtration


@dataclass
class NilpotentFiltration:
    lie: ChevalleyAlgebra
    steps: list  # Lie basis indices of the negative root vectors, in filtration order

    @property
    def length(self) -> int:
        return len(self.steps)

    def ideal_ok(self) -> bool:
        """Each tail span{steps[k:]} is an ideal in span{steps[k-1:]}."""
        for k in range(1, len(self.steps) + 1):
            tail = set(self.steps[k:])
            for a in self.steps[k - 1 :]:
                for b in self.steps[k:]:
                    if any(c not in tail for c in self.lie.bracket(a, b)):
                        return False
        return True


def nilpotent_filtration(lie: ChevalleyAlgebra, w: WeylElement) -> NilpotentFiltration:
    """Root vectors F_beta for the inversion roots beta_k = s_i1 ... s_i(k-1)(alpha_ik) of w."""
    rd = lie.rd
    steps = []
    for k, i in enumerate(w.word):
        beta = weyl_element(rd, w.word[:k]).apply(rd.simple_roots[i])
        steps.append(lie.index[("F", beta)])
    return NilpotentFiltration(lie, steps)


# ---------------------------------------------------------------- restricted duals


def _sub_monomials(lie, gens, depth):
    out = []

    def rec(k, acc, left):
        if k == len(gens):
            out.append(tuple(acc))
            return
        h = lie.height(gens[k])
        e = 0
        while h * e <= left:
            rec(k + 1, acc + [e], left - h * e)
            e += 1

    rec(0, [], depth)
    return sorted(out)


def _sub_pbw(lie, gens):
    order = list(gens) + [a for a in range(lie.dim) if a not in gens]
    return PBWAlgebra(lie, order)


def _embed(gens, mono, n):
    return tuple(mono) + (0,) * (n - len(mono))


def dual_action_direct(lie: ChevalleyAlgebra, gens: list, depth: int) -> dict:
    """Action of each generator on U(n)* (dual PBW basis, n spanned by ``gens``) via (x.f)(u) = f(u x)."""
    pbw = _sub_pbw(lie, gens)
    monos = _sub_monomials(lie, gens, depth)
    index = {m: k for k, m in enumerate(monos)}
    out = {}
    for x in gens:
        mat = [[0] * len(monos) for _ in monos]
        for u in monos:
            prod = pbw.mul({_embed(gens, u, lie.dim): 1}, pbw.generator(x))
            for mono, c in prod.items():
                key = mono[: len(gens)]
                if any(mono[len(gens) :]):
                    raise AssertionError("generators do not span a subalgebra")
                if key in index:
                    # (x.delta_key)(u) = c
                    mat[index[u]][index[key]] += c
        out[x] = mat
    return {"basis": monos, "action": out}


def dual_action_stepwise(lie: ChevalleyAlgebra, gens: list, depth: int) -> dict:
    """The same action assembled one filtration step at a time.

    With u = x0^a v (v in the ideal), x in the ideal acts on the second factor
    and ``x0 . (delta_b (x) psi) = delta_(b-1) (x) psi - delta_b (x) (psi o ad_x0)``.
    """
    monos = _sub_monomials(lie, gens, depth)
    index = {m: k for k, m in enumerate(monos)}
    if len(gens) == 1:
        return dual_action_direct(lie, gens, depth)
    x0, rest = gens[0], list(gens[1:])
    inner = dual_action_stepwise(lie, rest, depth)
    inner_index = {m: k for k, m in enumerate(inner["basis"])}
    pbw_rest = _sub_pbw(lie, rest)
    out = {}
    for x in gens:
        mat = [[0] * len(monos) for _ in monos]
        for col, m in enumerate(monos):
            b, psi = m[0], m[1:]
            if x != x0:
                inner_mat = inner["action"][x]
                j = inner_index[psi]
                for i, row in enumerate(inner_mat):
                    if row[j]:
                        key = (b,) + inner["basis"][i]
                        if key in index:
                            mat[index[key]][col] += row[j]
                continue
            if b >= 1:
                mat[index[(b - 1,) + psi]][col] += 1
            # psi o ad_x0 as a functional: value on v is psi([x0, v])
            for v in inner["basis"]:
                key = (b,) + v
                if key not in index:
                    continue
                br = pbw_rest.bracket(pbw_rest.generator(x0), {_embed(rest, v, lie.dim): 1})
                c = 0
                for mono, val in br.items():
                    if mono[: len(rest)] == psi and not any(mono[len(rest) :]):
                        c += val
                if c:
                    mat[index[key]][col] -= c
        out[x] = mat
    return {"basis": monos, "action": out}


# ---------------------------------------------------------------- semiregular modules


@dataclass
class SemiregularModule:
    """U_(F_j) / U for w = s_j, or U(g) itself for w = e, as a bimodule on a PBW-degree window."""

    lie: ChevalleyAlgebra
    w: WeylElement
    depth: int
    field: object = QQ

    def __post_init__(self):
        if self.w.length > 1:
            raise UnsupportedTwist("semiregular modules are built for length at most one")
        self.j = self.w.word[0] if self.w.length else None
        if self.j is None:
            self.alg = PBWAlgebra(self.lie)
        else:
            self.alg = _local_algebra(self.lie, self.lie.f(self.j))

    def _keep(self, elem: dict) -> dict:
        if self.j is None:
            return elem
        return {m: c for m, c in elem.items() if m[0] < 0}

    def degree(self, mono) -> int:
        if self.j is None:
            return sum(mono)
        return (-mono[0] - 1) + sum(mono[1:])

    def basis(self) -> list:
        """Monomials of degree at most ``depth``, by weight."""
        n = self.lie.dim
        out = []

        def rec(k, acc, left):
            if k == n:
                out.append(tuple(acc))
                return
            if k == 0 and self.j is not None:
                for a in range(1, left + 2):
                    rec(1, [-a], left - (a - 1))
                return
            for e in range(left + 1):
                rec(k + 1, acc + [e], left - e)

        rec(0, [], self.depth)
        return sorted(out)

    def weight(self, mono) -> tuple:
        pbw = self.alg if self.j is None else self.alg.pbw
        return pbw.weight(mono)

    def character(self) -> dict:
        ch: dict = {}
        for m in self.basis():
            w = self.weight(m)
            ch[w] = ch.get(w, 0) + 1
        return ch

    def generator(self, a: int) -> dict:
        return self.alg.generator(a) if self.j is None else self.alg.pbw.generator(a)

    def left(self, a: int, elem: dict) -> dict:
        return self._keep(self.alg.mul(self.generator(a), elem))

    def right(self, elem: dict, a: int) -> dict:
        return self._keep(self.alg.mul(elem, self.generator(a)))

    def unit_dual(self, n: int = 0) -> dict:
        """The element matching 1 (x) delta_n."""
        if self.j is None:
            raise UnsupportedTwist("no dual factor for w = e")
        return {(-n - 1,) + (0,) * (self.lie.dim - 1): 1}


def build_semiregular(rd: RootDatum, w: WeylElement, depth: int, field=QQ) -> SemiregularModule:
    return SemiregularModule(chevalley_algebra(rd.label), w, depth, field)


def semiregular_right_action(s: SemiregularModule, x: int, elem: dict) -> dict:
    """Right multiplication by the Lie basis element ``x``; commutes with the left action."""
    for m in elem:
        if s.degree(m) > s.depth:
            raise ValueError("element outside the semiregular window")
    return s.right(elem, x)


# ---------------------------------------------------------------- twisting


@dataclass
class TwistRecord:
    engine: LocalizedQuotient
    j: int
    sigma: tuple
    source_top: tuple


def _twisted_keys(eng: LocalizedQuotient, rd: RootDatum, j: int, new_top, depth: int) -> dict:
    ind = eng.ind
    lie = ind.lie
    refl = lambda mu: rd.reflect(j, mu)  # noqa: E731
    heights = []
    for k, a in enumerate(ind.comp):
        if k == 0:
            heights.append(1)
        else:
            heights.append(sum(rd.root_coords(refl(tuple(-x for x in lie.weight(a))))))
    out: dict = {}
    base = ind.base
    for label in base.labels(depth):
        diff = tuple(t - x for t, x in zip(base.top, base.weight(label)))
        lev = sum(rd.root_coords(refl(diff)))
        if lev > depth:
            continue

        def rec(k, acc, left):
            if k == ind.n:
                key = (tuple(acc), label)
                mu = refl(eng.weight(key))
                if rd.in_window(new_top, mu, depth):
                    out.setdefault(mu, []).append(key)
                return
            if k == 0:
                a = 1
                while a - 1 <= left:
                    rec(1, [-a], left - (a - 1))
                    a += 1
                return
            e = 0
            while heights[k] * e <= left:
                rec(k + 1, acc + [e], left - heights[k] * e)
                e += 1

        rec(0, [], depth - lev)
    return {mu: sorted(ks) for mu, ks in out.items()}


@lru_cache(maxsize=None)
def _twist_z(label: str, j: int, base_key, depth: int) -> TruncatedModule:
    lie = chevalley_algebra(label)
    rd = lie.rd
    base = _BASES[base_key]
    ind = InducedModule(lie, base, first=lie.f(j))
    eng = LocalizedQuotient(ind)
    old_top = tuple(t - x for t, x in zip(base.top, lie.weight(lie.f(j))))
    new_top = rd.reflect(j, old_top)
    kb = _twisted_keys(eng, rd, j, new_top, depth)
    sigma = lie.reflection_automorphism(j)
    m = realize(eng, kb, rd, new_top, depth, QQ, sigma=sigma, relabel=lambda mu: rd.reflect(j, mu), name="")
    m.realization = TwistRecord(eng, j, sigma, base.top)
    return m


_BASES: dict = {}


def _base_key(base) -> tuple:
    key = (type(base).__name__, base.lie.rd.label, base.top, getattr(base, "i", None), getattr(base, "kind", None))
    _BASES.setdefault(key, base)
    return key


def twist_module(rd: RootDatum, w: WeylElement, m: TruncatedModule, depth: int | None = None) -> TruncatedModule:
    """Theta_w(m) for w of length at most one and m a Verma or parabolically induced module."""
    depth = m.depth if depth is None else depth
    if w.length == 0:
        return m.restrict(depth) if depth <= m.depth else m
    if w.length > 1:
        raise UnsupportedTwist(f"twisting by {w.name} is outside the supported range")
    eng = m.realization
    if not isinstance(eng, InducedModule):
        raise UnsupportedTwist("twisting needs a Verma or parabolically induced module")
    j = w.word[0]
    if j in eng.base.levi:
        raise UnsupportedTwist("the twisting root lies in the Levi factor of the inducing parabolic")
    out = _twist_z(rd.label, j, _base_key(eng.base), depth)
    res = change_field(out, m.field)
    res.name = f"Theta_{w.name}({m.name})"
    return res


def quasi_verma(rd: RootDatum, w: WeylElement, lam, depth: int, field=QQ) -> TruncatedModule:
    """Theta_w applied to the antidominant Verma M(w0.lam)."""
    lam = rd.check(lam)
    w0 = longest_element(enumerate_weyl(rd))
    low = dot_action(rd, w0, lam)
    return twist_module(rd, w, verma(rd, low, depth, field), depth)


# ---------------------------------------------------------------- homs out of the semiregular module


def hom_from_semiregular(rd: RootDatum, w: WeylElement, m: TruncatedModule, depth: int | None = None) -> TruncatedModule:
    """hom_g(S_s, S_s (x) M) on the window, for sl2, with the grading twist of ``m`` undone first.

    A hom of weight nu is a sequence x_k in X_(nu + k alpha) with F x_(k+1) = x_k and
    F x_1 = 0; it is fixed by x_K once nu + (K - 1) alpha lies above the top of M.
    """
    if rd.rank != 1:
        raise UnsupportedTwist("hom_from_semiregular is implemented for sl2 only")
    depth = m.depth if depth is None else depth
    if not m.total_dim():
        return TruncatedModule(rd, m.field, m.top, depth, {}, {}, {}, "0", None)
    rec = m.realization
    if not isinstance(rec, TwistRecord) or w.length != 1:
        raise UnsupportedTwist("expected a module produced by twist_module with w = s")
    eng = rec.engine
    lie = eng.lie
    f = lie.f(0)
    mu0 = rec.source_top

    def wt(d, k):
        return (mu0[0] - 2 * d + 2 * k,)

    def keys_at(mu):
        n = (mu[0] - mu0[0]) // 2
        return [((-n,), 0)] if n >= 1 else []

    def lift_shift(vec, r):
        out = {}
        for (mono, label), c in vec.items():
            out[((mono[0] - r,) + mono[1:], label)] = c
        return out

    def f_power(vec, r):
        for _ in range(r):
            vec = eng.act({f: 1}, vec)
        return vec

    def x_of(phi_vec, K, k):
        return f_power(phi_vec, K - k) if k <= K else lift_shift(phi_vec, k - K)

    def as_list(vec, mu):
        ks = keys_at(mu)
        return [Fraction(vec.get(k, 0)) for k in ks]

    spaces = {}
    for d in range(depth + 1):
        K = d + 1
        mu = wt(d, K)
        ks = keys_at(mu)
        # F^K x_K = 0 in the quotient
        img_rows = []
        for key in ks:
            img = f_power({key: 1}, K)
            img_rows.append(img)
        target_keys = sorted({k for v in img_rows for k in v})
        mat = [[Fraction(v.get(tk, 0)) for v in img_rows] for tk in target_keys]
        sols = nullspace(mat, len(ks), QQ) if mat else [[Fraction(int(i == j)) for j in range(len(ks))] for i in range(len(ks))]
        spaces[d] = (K, [{k: c for k, c in zip(ks, s) if c} for s in sols])

    def apply_lie(y: int, d: int, phi_vec: dict) -> tuple:
        K = spaces[d][0]
        dy = d - lie.weight(y)[0] // 2
        if dy < 0 or dy > depth:
            return None, None
        K2 = spaces[dy][0]
        out: dict = {}
        m_ = 0
        cur = {y: 1}
        while cur:
            c = gen_binomial(-K2, m_)
            if c:
                add_into(out, eng.act(cur, x_of(phi_vec, K, K2 + m_)), c)
            cur = lie.ad({f: 1}, cur)
            m_ += 1
        return dy, out

    dims = {wt(d, 0): len(spaces[d][1]) for d in spaces if spaces[d][1]}
    coords = {}
    for d, (K, basis) in spaces.items():
        mu = wt(d, K)
        coords[d] = SubspaceCoordinates([as_list(v, mu) for v in basis], QQ) if basis else None
    action: dict = {}
    for kind, y in (("E", lie.e(0)), ("F", lie.f(0))):
        for d, (K, basis) in spaces.items():
            if not basis:
                continue
            cols_by_n: dict = {}
            for phi in basis:
                vec, dcur = phi, d
                for n in range(1, depth + 1):
                    dn, vec = apply_lie(y, dcur, vec)
                    if dn is None:
                        break
                    if not vec:
                        cols_by_n.setdefault(n, []).append(None)
                        dcur = dn
                        continue
                    Kn = spaces[dn][0]
                    c = coords[dn].coords(as_list(vec, wt(dn, Kn))) if coords[dn] else None
                    if c is None:
                        raise ArithmeticError("hom action left the solution space")
                    cols_by_n.setdefault(n, []).append([x / factorial(n) for x in c])
                    # continue from the representative x_K of the image
                    vec = {k: v for k, v in zip(keys_at(wt(dn, Kn)), as_list(vec, wt(dn, Kn)))}
                    dcur = dn
            for n, cols in cols_by_n.items():
                if len(cols) != len(basis):
                    continue
                dn = d + (n if kind == "F" else -n)
                tdim = len(spaces[dn][1]) if dn in spaces else 0
                cols = [c if c is not None else [Fraction(0)] * tdim for c in cols]
                action.setdefault(gen_key(kind, 0, n), {})[wt(d, 0)] = transpose(cols, tdim)
    out = TruncatedModule(rd, QQ, mu0, depth, dims, action, {mu: list(range(k)) for mu, k in dims.items()}, f"hom(S_s,{m.name})", None)
    return out
