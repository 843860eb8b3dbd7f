"""Verma, contragredient, Weyl and coWeyl modules on a truncation window, with their maps.

Everything is first computed over Z (exact rationals with integrality
checks) and then specialized.  Submodules of a Verma module M(lam) are
described by per-weight row bases in the divided-power PBW coordinates of
M(lam); over F_p those rows come from saturating the rational span inside
the lattice, so the reduction mod p is a genuine U_F(g)-submodule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd, lcm

from .charring import FormalCharacter
from .induced import HighestWeightLine, InducedModule, Sl2LeviModule, realize
from .lie import chevalley_algebra
from .linalg import QQ, SubspaceCoordinates, identity, inverse, matmul, nullspace, rref, saturate, sparse_nullspace, transpose, zeros
from .pbw import add_into, gen_binomial
from .rootdata import RootDatum, dot_action, is_dominant, is_regular_dominant
from .truncated import (
    InconsistencyError,
    ModuleMap,
    TruncatedModule,
    check_module_map,
    contragredient,
    dual_map,
    gen_key,
    gen_name,
    map_is_injective,
    map_is_surjective,
    shift,
)
from .weyl import WeylElement, chain_to_identity, enumerate_weyl, longest_element, weyl_element

__all__ = [
    "Submodule",
    "audit_relations",
    "change_field",
    "contragredient",
    "coweyl_module",
    "dual_map",
    "find_isomorphism",
    "map_cokernel",
    "map_is_injective",
    "map_is_surjective",
    "parabolic_verma",
    "quotient_module",
    "singular_vectors",
    "submodule_as_module",
    "submodule_lattice",
    "verma",
    "verma_embedding",
    "weyl_module",
]


# ---------------------------------------------------------------- Verma modules


def _group_keys(engine, keys, rd, top, depth) -> dict:
    out: dict = {}
    for key in keys:
        mu = engine.weight(key)
        if rd.in_window(top, mu, depth):
            out.setdefault(mu, []).append(key)
    return {mu: sorted(ks) for mu, ks in out.items()}


@lru_cache(maxsize=None)
def _verma_engine(label: str, lam: tuple, w0_word) -> InducedModule:
    lie = chevalley_algebra(label, w0_word)
    return InducedModule(lie, HighestWeightLine(lie, lam))


@lru_cache(maxsize=None)
def _verma_z(label: str, lam: tuple, depth: int, w0_word) -> TruncatedModule:
    eng = _verma_engine(label, lam, w0_word)
    rd = eng.lie.rd
    kb = _group_keys(eng, eng.keys(depth), rd, lam, depth)
    return realize(eng, kb, rd, lam, depth, QQ, name=f"M({_wname(lam)})")


def _wname(mu) -> str:
    return ",".join(str(x) for x in mu)


def change_field(m: TruncatedModule, field) -> TruncatedModule:
    """Specialize an integral module to ``field``."""
    if field == m.field:
        return m
    action = {g: {mu: [[field(x) for x in row] for row in b] for mu, b in blocks.items()} for g, blocks in m.action.items()}
    return TruncatedModule(m.rd, field, m.top, m.depth, dict(m.dims), action, m.basis, m.name, m.realization)


def verma(rd: RootDatum, lam, depth: int, field=QQ, w0_word=None) -> TruncatedModule:
    """M(lam) over ``field`` with basis the divided PBW monomials applied to the generator."""
    lam = rd.check(lam)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    w0 = None if w0_word is None else tuple(w0_word)
    return change_field(_verma_z(rd.label, lam, depth, w0), field)


@lru_cache(maxsize=None)
def _parabolic_z(label: str, i: int, top: tuple, kind: str, depth: int) -> TruncatedModule:
    lie = chevalley_algebra(label)
    eng = InducedModule(lie, Sl2LeviModule(lie, i, top, kind))
    kb = _group_keys(eng, eng.keys(depth), lie.rd, top, depth)
    tag = "M" if kind == "verma" else "DM"
    return realize(eng, kb, lie.rd, top, depth, QQ, name=f"Ind{i + 1}({tag}({_wname(top)}))")


def parabolic_verma(rd: RootDatum, i: int, top, kind: str, depth: int, field=QQ) -> TruncatedModule:
    """U(g) induced from the parabolic with Levi sl2 at ``i``, applied to an sl2 Verma or dual Verma."""
    return change_field(_parabolic_z(rd.label, i, rd.check(top), kind, depth), field)


def verma_engine(rd: RootDatum, lam, w0_word=None) -> InducedModule:
    return _verma_engine(rd.label, rd.check(lam), None if w0_word is None else tuple(w0_word))


# ---------------------------------------------------------------- relation audit


def _binom_scalar(field, x: int, t: int):
    return field(gen_binomial(x, t))


def audit_relations(m: TruncatedModule, max_power: int | None = None) -> list:
    """Hyperalgebra relations that fail on the window, as readable strings (empty list = all hold)."""
    rd, fld = m.rd, m.field
    top_n = m.max_power() if max_power is None else min(max_power, m.max_power())
    failures = []

    def path(mu, gens):
        """Product applied right to left; None if it leaves the known window."""
        cur = identity(m.dim(mu), fld)
        at = tuple(mu)
        for g in reversed(gens):
            if g[2] == 0:
                continue
            mat = m.matrix(g, at)
            if mat is None:
                return None, None
            nxt = shift(rd, at, g)
            cur = matmul(mat, cur, fld, m.dim(at)) if m.dim(nxt) and m.dim(at) else zeros(m.dim(nxt), m.dim(mu))
            at = nxt
        return cur, at

    def close(terms, mu, label):
        acc = None
        for c, gens in terms:
            mat, _ = path(mu, gens)
            if mat is None:
                return
            mat = [[fld.reduce(fld(c) * x) for x in row] for row in mat]
            acc = mat if acc is None else [[fld.reduce(x + y) for x, y in zip(r1, r2)] for r1, r2 in zip(acc, mat)]
        if acc is not None and any(any(row) for row in acc):
            failures.append(f"{label} at {mu}")

    for mu in m.weights:
        if not m.dim(mu):
            continue
        for i in range(rd.rank):
            for a in range(1, top_n + 1):
                for b in range(1, top_n + 1 - a):
                    for kind in ("E", "F"):
                        close([(1, [gen_key(kind, i, a), gen_key(kind, i, b)]), (-comb(a + b, a), [gen_key(kind, i, a + b)])], mu, f"{kind}{i + 1}^({a}){kind}{i + 1}^({b})")
            for a in range(1, top_n + 1):
                for b in range(1, top_n + 1):
                    terms = [(1, [gen_key("E", i, a), gen_key("F", i, b)])]
                    for t in range(min(a, b) + 1):
                        hw = mu[i] + 2 * (a - t) - a - b + 2 * t
                        # weight after E^(a-t) is mu + (a-t) alpha_i, pairing mu_i + 2(a-t)
                        c = gen_binomial(hw, t)
                        terms.append((-c, [gen_key("F", i, b - t), gen_key("E", i, a - t)]))
                    close(terms, mu, f"E{i + 1}^({a})F{i + 1}^({b})")
            for j in range(rd.rank):
                if j == i:
                    continue
                for a in range(1, top_n + 1):
                    for b in range(1, top_n + 1):
                        close([(1, [gen_key("E", i, a), gen_key("F", j, b)]), (-1, [gen_key("F", j, b), gen_key("E", i, a)])], mu, f"[E{i + 1}^({a}),F{j + 1}^({b})]")
                mij = 1 - rd.cartan[j][i]
                for kind in ("E", "F"):
                    terms = []
                    for k in range(mij + 1):
                        gens = [gen_key(kind, i, k), gen_key(kind, j, 1), gen_key(kind, i, mij - k)]
                        terms.append(((-1) ** k, gens))
                    if mij <= top_n:
                        close(terms, mu, f"Serre {kind}{i + 1}{kind}{j + 1}")
    return failures


# ---------------------------------------------------------------- singular vectors


def singular_vectors(m: TruncatedModule, mu) -> list:
    """Basis of the vectors of weight ``mu`` killed by every stored E_i^(n)."""
    mu = m.rd.check(mu)
    if not m.in_window(mu):
        raise ValueError(f"{mu} is outside the truncation window")
    d = m.dim(mu)
    if not d:
        return []
    rows = []
    for gen in m.generators:
        if gen[0] != "E":
            continue
        mat = m.matrix(gen, mu)
        rows.extend(mat)
    if not rows:
        return identity(d, m.field)
    return nullspace(rows, d, m.field)


def _to_ordinary(engine, mu_keys, coords) -> dict:
    return {k: Fraction(c) / engine.scale(k) for k, c in zip(mu_keys, coords) if c}


def _to_lattice(engine, mu_keys, vec) -> list:
    index = {k: j for j, k in enumerate(mu_keys)}
    out = [Fraction(0)] * len(mu_keys)
    for k, c in vec.items():
        j = index.get(k)
        if j is None:
            raise InconsistencyError(f"vector component {k} outside the expected weight space")
        out[j] = Fraction(c) * engine.scale(k)
    return out


def _leading_normalize(vec: dict) -> dict:
    """Scale so that the coefficient of the largest monomial in the convex PBW order is 1."""
    lead = max(vec, key=lambda k: (sum(k[0]), k[0]))
    c = Fraction(vec[lead])
    return {k: Fraction(v) / c for k, v in vec.items()}


@lru_cache(maxsize=None)
def _simple_singular(label: str, top: tuple, target: tuple, w0_word) -> tuple:
    """Ordinary-PBW element u of U(n-) with u v_top the normalized singular vector of weight ``target``."""
    eng = _verma_engine(label, top, w0_word)
    rd = eng.lie.rd
    depth = rd.depth_below(top, target)
    mod = _verma_z(label, top, depth, w0_word)
    sv = singular_vectors(mod, target)
    if len(sv) != 1:
        raise InconsistencyError(f"expected one singular vector of weight {target} in M({top}), found {len(sv)}")
    vec = _leading_normalize(_to_ordinary(eng, mod.basis[target], sv[0]))
    return tuple(sorted((k[0], c) for k, c in vec.items()))


def _apply_u(eng: InducedModule, u: tuple, vec: dict) -> dict:
    out: dict = {}
    for mono, c in u:
        add_into(out, eng.apply_monomial(mono, vec), c)
    return out


def _chain_data(rd: RootDatum, w: WeylElement, lam, w0_word):
    chain = chain_to_identity(w)
    tops = [dot_action(rd, v, lam) for v in chain]
    return chain, tops


@lru_cache(maxsize=None)
def _chain_vector(label: str, lam: tuple, word: tuple, w0_word) -> tuple:
    """Image in M(lam) (ordinary coordinates) of the generator of M(w.lam) under the chain of embeddings."""
    eng = _verma_engine(label, lam, w0_word)
    rd = eng.lie.rd
    w = weyl_element(rd, word)
    chain, tops = _chain_data(rd, w, lam, w0_word)
    y = {((0,) * eng.n, 0): Fraction(1)}
    ell = len(chain) - 1
    for k in range(ell - 1, -1, -1):
        u = _simple_singular(label, tops[k + 1], tops[k], w0_word)
        y = _apply_u(eng, u, y)
    return tuple(sorted(y.items()))


@dataclass
class Submodule:
    """Per-weight row bases of a submodule of ``ambient`` (rows are ambient coordinates)."""

    ambient: TruncatedModule
    rows: dict
    name: str = ""

    def dim(self, mu) -> int:
        return len(self.rows.get(tuple(mu), ()))

    def character(self) -> FormalCharacter:
        a = self.ambient
        return FormalCharacter(a.rd, a.top, a.depth, {mu: len(r) for mu, r in self.rows.items() if r})

    def contains(self, other: "Submodule") -> bool:
        fld = self.ambient.field
        for mu, rows in other.rows.items():
            if not rows:
                continue
            mine = self.rows.get(mu, [])
            sc = SubspaceCoordinates(mine, fld)
            if any(sc.coords(r) is None for r in rows):
                return False
        return True

    def same_as(self, other: "Submodule") -> bool:
        return self.contains(other) and other.contains(self)


def _image_rows(label, lam, word, depth, w0_word) -> dict:
    """Images of the divided PBW monomials of M(w.lam) in lattice coordinates of M(lam), over Q."""
    eng = _verma_engine(label, lam, w0_word)
    rd = eng.lie.rd
    amb = _verma_z(label, lam, depth, w0_word)
    s = dict(_chain_vector(label, lam, word, w0_word))
    top = dot_action(rd, weyl_element(rd, word), lam)
    sub_depth = depth - rd.depth_below(lam, top)
    memo: dict = {(0,) * eng.n: s}

    def image(mono):
        hit = memo.get(mono)
        if hit is not None:
            return hit
        k = next(j for j, e in enumerate(mono) if e)
        rest = list(mono)
        rest[k] -= 1
        v = eng.act({eng.comp[k]: 1}, image(tuple(rest)))
        memo[mono] = v
        return v

    rows: dict = {}
    if sub_depth < 0:
        return rows
    for mono in sorted(eng.monomials(sub_depth)):
        vec = image(mono)
        mu = eng.weight((mono, 0))
        mu = tuple(t + x - y for t, x, y in zip(top, mu, lam))
        if not rd.in_window(lam, mu, depth):
            continue
        f = 1
        for e in mono:
            f *= factorial(e)
        rows.setdefault(mu, []).append(_to_lattice(eng, amb.basis[mu], {k: c / f for k, c in vec.items()}))
    return rows


def _specialize_rows(rows: dict, field) -> dict:
    if field.characteristic == 0:
        return {mu: [[field(x) for x in r] for r in rs] for mu, rs in rows.items()}
    out = {}
    for mu, rs in rows.items():
        out[mu] = [[field(x) for x in r] for r in saturate(rs)]
    return out


@lru_cache(maxsize=None)
def _lattice_cached(label, lam, depth, field, w0_word) -> dict:
    eng = _verma_engine(label, lam, w0_word)
    rd = eng.lie.rd
    amb = change_field(_verma_z(label, lam, depth, w0_word), field)
    out = {}
    for w in enumerate_weyl(rd, w0_word).elements:
        rows = _image_rows(label, lam, w.word, depth, w0_word)
        out[w] = Submodule(amb, _specialize_rows(rows, field), f"Im({w.name})")
    return out


def submodule_lattice(rd: RootDatum, lam, depth: int, field=QQ, w0_word=None) -> dict:
    """Images of the chain embeddings M(w.lam) -> M(lam) for every w (saturated over F_p)."""
    lam = rd.check(lam)
    if not is_regular_dominant(rd, lam):
        raise ValueError(f"{lam} is not regular dominant")
    return _lattice_cached(rd.label, lam, depth, field, None if w0_word is None else tuple(w0_word))


def verma_embedding(w_prime: WeylElement, w: WeylElement, lam, depth: int, field=QQ, w0_word=None) -> ModuleMap:
    """M(w'.lam) -> M(w.lam) sending the generator to the normalized singular vector.

    Over Q the singular vector has leading PBW coefficient 1; over F_p it is the
    primitive integral multiple, reduced mod p (the resulting map may fail to be injective).
    """
    rd = w.rd
    lam = rd.check(lam)
    if w_prime.length != w.length + 1:
        raise ValueError("lengths must differ by one")
    src_top, tgt_top = dot_action(rd, w_prime, lam), dot_action(rd, w, lam)
    if rd.depth_below(tgt_top, src_top) is None:
        raise ValueError("w' is not above w in the dot order")
    w0 = None if w0_word is None else tuple(w0_word)
    u = _simple_singular(rd.label, tgt_top, src_top, w0)
    off = rd.depth_below(tgt_top, src_top)
    tgt_eng = _verma_engine(rd.label, tgt_top, w0)
    tgt_z = _verma_z(rd.label, tgt_top, depth + off, w0)
    src_z = _verma_z(rd.label, src_top, depth, w0)
    src_eng = _verma_engine(rd.label, src_top, w0)
    scale = Fraction(1)
    if field.characteristic:
        vec = _to_lattice(tgt_eng, tgt_z.basis[src_top], _apply_u(tgt_eng, u, {((0,) * tgt_eng.n, 0): 1}))
        num, den = 0, 1
        for x in vec:
            num = gcd(num, x.numerator)
            den = lcm(den, x.denominator)
        scale = Fraction(den, num)
    blocks = {}
    for mu, keys in src_z.basis.items():
        cols = []
        for key in keys:
            img = _apply_u(tgt_eng, u, {((0,) * tgt_eng.n, 0): Fraction(1)})
            img = tgt_eng.apply_monomial(key[0], img)
            cols.append(_to_lattice(tgt_eng, tgt_z.basis.get(mu, []), {k: c * scale / src_eng.scale(key) for k, c in img.items()}))
        blocks[mu] = [[field(cols[c][r]) for c in range(len(cols))] for r in range(len(tgt_z.basis.get(mu, [])))]
    src = change_field(src_z, field)
    tgt = change_field(tgt_z, field)
    return ModuleMap(src, tgt, blocks, f"i({w_prime.name}->{w.name})")


# ---------------------------------------------------------------- sub and quotient modules


def submodule_as_module(sub: Submodule, name: str | None = None) -> TruncatedModule:
    """The submodule with its own action matrices in the chosen row bases."""
    amb = sub.ambient
    fld = amb.field
    coords = {mu: SubspaceCoordinates(rows, fld) for mu, rows in sub.rows.items() if rows}
    action: dict = {}
    for gen in amb.generators:
        blocks = {}
        for mu, rows in sub.rows.items():
            if not rows:
                continue
            mat = amb.matrix(gen, mu)
            if mat is None:
                continue
            nu = shift(amb.rd, mu, gen)
            cols = []
            for r in rows:
                img = [fld.reduce(sum(x * y for x, y in zip(row, r))) for row in mat]
                if not any(img):
                    cols.append([fld(0)] * sub.dim(nu))
                    continue
                c = coords[nu].coords(img) if nu in coords else None
                if c is None:
                    raise InconsistencyError(f"{sub.name} is not stable under {gen_name(gen)} at {mu}")
                cols.append(c)
            blocks[mu] = transpose(cols, sub.dim(nu)) if cols else []
        action[gen] = blocks
    dims = {mu: len(r) for mu, r in sub.rows.items() if r}
    return TruncatedModule(amb.rd, fld, amb.top, amb.depth, dims, action, {mu: list(range(d)) for mu, d in dims.items()}, name or sub.name, None)


def inclusion_map(small: Submodule, big: Submodule, source: TruncatedModule, target: TruncatedModule) -> ModuleMap:
    """Coordinates of the rows of ``small`` in the rows of ``big``."""
    fld = small.ambient.field
    blocks = {}
    for mu, rows in small.rows.items():
        if not rows:
            continue
        sc = SubspaceCoordinates(big.rows.get(mu, []), fld)
        cols = []
        for r in rows:
            c = sc.coords(r)
            if c is None:
                raise InconsistencyError(f"{small.name} is not contained in {big.name} at {mu}")
            cols.append(c)
        blocks[mu] = transpose(cols, big.dim(mu))
    return ModuleMap(source, target, blocks, f"{small.name}->{big.name}")


def _quotient_data(rows, n, fld):
    red, piv = rref(rows, fld) if rows else ([], [])
    free = [j for j in range(n) if j not in set(piv)]
    return red, piv, free


def _project(v, red, piv, free, fld):
    v = list(v)
    for row, p in zip(red, piv):
        c = v[p]
        if c:
            v = [fld.reduce(x - c * y) for x, y in zip(v, row)]
    return [v[j] for j in free]


def quotient_module(amb: TruncatedModule, sub_rows: dict, name: str = "") -> tuple:
    """(quotient module, projection map); the quotient basis is the non-pivot coordinates."""
    fld = amb.field
    data = {mu: _quotient_data(sub_rows.get(mu, []), amb.dim(mu), fld) for mu in amb.dims}
    dims = {mu: len(d[2]) for mu, d in data.items() if d[2]}
    action: dict = {}
    for gen in amb.generators:
        blocks = {}
        for mu in amb.dims:
            mat = amb.matrix(gen, mu)
            if mat is None:
                continue
            nu = shift(amb.rd, mu, gen)
            red, piv, free = data[mu]
            # the image of every sub row must project to zero
            for r in sub_rows.get(mu, []):
                img = [fld.reduce(sum(x * y for x, y in zip(row, r))) for row in mat]
                if nu in data and any(_project(img, *data[nu], fld)):
                    raise InconsistencyError(f"action does not descend to the quotient ({gen_name(gen)} at {mu})")
            if not free or nu not in dims:
                continue
            cols = []
            for j in free:
                img = [row[j] for row in mat]
                cols.append(_project(img, *data[nu], fld))
            blocks[mu] = transpose(cols, dims[nu])
        action[gen] = blocks
    q = TruncatedModule(amb.rd, fld, amb.top, amb.depth, dims, action, {mu: [amb.basis.get(mu, [None] * amb.dim(mu))[j] for j in data[mu][2]] for mu in dims}, name, None)
    proj = {}
    for mu in dims:
        red, piv, free = data[mu]
        proj[mu] = [[fld(1) if j == f else fld(0) for j in range(amb.dim(mu))] for f in free]
        # column j of the projection is the projection of the unit vector e_j
        cols = [_project([fld(int(k == j)) for k in range(amb.dim(mu))], red, piv, free, fld) for j in range(amb.dim(mu))]
        proj[mu] = transpose(cols, len(free))
    return q, ModuleMap(amb, q, proj, f"{amb.name}->{name}")


def map_cokernel(f: ModuleMap) -> TruncatedModule:
    """Weightwise quotient of the target by the image; raises if the action does not descend."""
    tgt = f.target
    rows = {}
    for mu in tgt.dims:
        b = f.block(mu)
        if b and b[0]:
            rows[mu] = [list(c) for c in zip(*b) if any(c)]
    q, _ = quotient_module(tgt, rows, f"coker({f.name})")
    return q


# ---------------------------------------------------------------- Weyl modules


@lru_cache(maxsize=None)
def _weyl_rows(label, lam, depth, field, w0_word) -> dict:
    rd = _verma_engine(label, lam, w0_word).lie.rd
    rows: dict = {}
    for i in range(rd.rank):
        for mu, rs in _image_rows(label, lam, (i,), depth, w0_word).items():
            rows.setdefault(mu, []).extend(rs)
    out = {}
    for mu, rs in rows.items():
        basis, _ = rref(rs, QQ)
        if field.characteristic:
            out[mu] = [[field(x) for x in r] for r in saturate(basis)]
        else:
            out[mu] = basis
    return out


def _weyl_depth(rd, lam) -> int:
    w0 = longest_element(enumerate_weyl(rd))
    return rd.depth_below(lam, w0.apply(lam))


def weyl_module(rd: RootDatum, lam, field=QQ, depth: int | None = None) -> TruncatedModule:
    """W(lam) = M(lam) modulo the saturated sum of the images of M(s_i.lam)."""
    lam = rd.check(lam)
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    if depth is None:
        depth = _weyl_depth(rd, lam) + 1
    amb = verma(rd, lam, depth, field)
    q, _ = quotient_module(amb, _weyl_rows(rd.label, lam, depth, field, None), f"W({_wname(lam)})")
    return q


def weyl_quotient_map(rd: RootDatum, lam, depth: int, field=QQ) -> ModuleMap:
    lam = rd.check(lam)
    amb = verma(rd, lam, depth, field)
    _, proj = quotient_module(amb, _weyl_rows(rd.label, lam, depth, field, None), f"W({_wname(lam)})")
    return proj


def coweyl_module(rd: RootDatum, lam, field=QQ, depth: int | None = None) -> TruncatedModule:
    m = contragredient(weyl_module(rd, lam, field, depth))
    m.name = f"DW({_wname(lam)})"
    return m


# ---------------------------------------------------------------- isomorphisms


def _iso_generators(a: TruncatedModule, b: TruncatedModule) -> list:
    fld = a.field
    gens = sorted(set(a.action) & set(b.action))
    if fld.characteristic == 0:
        return [g for g in gens if g[2] == 1]
    p = fld.characteristic
    powers = set()
    q = 1
    while q <= max((g[2] for g in gens), default=0):
        powers.add(q)
        q *= p
    return [g for g in gens if g[2] in powers]


def find_isomorphism(a: TruncatedModule, b: TruncatedModule, margin: int = 0, seed: int = 0, tries: int = 64) -> ModuleMap | None:
    """An isomorphism a -> b on the common window, or None if none exists there."""
    fld = a.field
    rd = a.rd
    weights = [mu for mu in a.weights if rd.in_window(a.top, mu, a.depth - margin) and rd.in_window(b.top, mu, b.depth - margin)]
    weights = sorted(set(weights) | {mu for mu in b.weights if rd.in_window(a.top, mu, a.depth - margin) and rd.in_window(b.top, mu, b.depth - margin)})
    if any(a.dim(mu) != b.dim(mu) for mu in weights):
        return None
    offset = {}
    n = 0
    for mu in weights:
        offset[mu] = n
        n += a.dim(mu) * b.dim(mu)
    wset = set(weights)

    def var(mu, r, c):
        return offset[mu] + r * a.dim(mu) + c

    eqs = []
    for mu in weights:
        da = a.dim(mu)
        if not da:
            continue
        for gen in _iso_generators(a, b):
            nu = shift(rd, mu, gen)
            if nu not in wset or not a.dim(nu):
                continue
            ma, mb = a.matrix(gen, mu), b.matrix(gen, mu)
            if ma is None or mb is None:
                continue
            dn = a.dim(nu)
            # (X_nu A)[r][c] - (B X_mu)[r][c] = 0
            for r in range(dn):
                for c in range(da):
                    eq: dict = {}
                    for k in range(dn):
                        if ma[k][c]:
                            add_into(eq, {var(nu, r, k): ma[k][c]})
                    for k in range(da):
                        if mb[r][k]:
                            add_into(eq, {var(mu, k, c): -mb[r][k]})
                    if eq:
                        eqs.append(eq)
    sols = sparse_nullspace(eqs, n, fld)
    if not sols:
        return None
    rng = random.Random(seed)

    def build(vec):
        blocks = {}
        for mu in weights:
            d = a.dim(mu)
            if d:
                blocks[mu] = [[vec[var(mu, r, c)] for c in range(d)] for r in range(d)]
        return blocks

    def invertible(blocks):
        return all(inverse(bl, fld) is not None for bl in blocks.values())

    candidates = [sols[0]] if len(sols) == 1 else []
    for _ in range(tries):
        if len(sols) == 1:
            break
        coeffs = [fld(rng.randrange(1, 1000)) for _ in sols]
        candidates.append([fld.reduce(sum(c * s[j] for c, s in zip(coeffs, sols))) for j in range(n)])
    for vec in candidates:
        blocks = build(vec)
        if invertible(blocks):
            f = ModuleMap(a, b, blocks, f"{a.name}~{b.name}")
            if not check_module_map(f, margin):
                return f
    return None
