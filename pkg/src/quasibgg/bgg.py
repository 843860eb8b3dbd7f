"""BGG and Cousin complexes assembled from the lattice of Verma submodules.

The term for w is the contragredient of I_w, the image of M(w.lam) in
M(lam) (saturated in the Z-form over F_p); components of the differential
are transposed inclusions I_w' -> I_w for Bruhat covers w < w', times a sign.
Over Q the terms are DM(w.lam) on the nose; over F_p they are the
quasi-Vermas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .charring import weyl_character
from .linalg import GF, QQ, matmul, rank, transpose, zeros
from .modules import (
    change_field,
    contragredient,
    find_isomorphism,
    inclusion_map,
    parabolic_verma,
    submodule_as_module,
    submodule_lattice,
    verma,
    weyl_quotient_map,
)
from .rootdata import RootDatum, build_root_datum, dot_action, is_regular_dominant
from .truncated import InconsistencyError, ModuleMap, TruncatedModule, check_module_map, map_rank
from .twisting import UnsupportedTwist, twist_module
from .weyl import BruhatPoset, enumerate_weyl, longest_element, weyl_element


# ---------------------------------------------------------------- signs


def assign_signs(p: BruhatPoset) -> dict:
    """Lexicographically least (+1 before -1, covers in sorted order) signs with every square product -1."""
    covers = sorted(p.covers)
    pos = {c: k for k, c in enumerate(covers)}
    squares = [(pos[(u, a)], pos[(a, v)], pos[(u, b)], pos[(b, v)]) for u, a, b, v in p.squares()]
    for signs in itertools.product((1, -1), repeat=len(covers)):
        if all(signs[i] * signs[j] * signs[k] * signs[l] == -1 for i, j, k, l in squares):
            return dict(zip(covers, signs))
    raise InconsistencyError("no valid sign assignment")


def signs_valid(p: BruhatPoset, signs: dict) -> bool:
    return all(signs[(u, a)] * signs[(a, v)] * signs[(u, b)] * signs[(b, v)] == -1 for u, a, b, v in p.squares())


# ---------------------------------------------------------------- complexes


@dataclass
class ComplexOfModules:
    rd: RootDatum
    lam: tuple
    field: object
    depth: int
    poset: BruhatPoset
    terms: dict  # degree -> list of (WeylElement, TruncatedModule)
    differentials: dict  # cover (i, j) -> ModuleMap from the term of elements[i] to that of elements[j]
    signs: dict = field(default_factory=dict)
    name: str = ""

    def term(self, w):
        for _, lst in self.terms.items():
            for v, m in lst:
                if v == w:
                    return m
        raise KeyError(w)

    @property
    def degrees(self) -> list:
        return sorted(self.terms)

    def component(self, cover) -> ModuleMap:
        """Signed differential component for a cover."""
        f = self.differentials[cover]
        s = self.signs.get(cover, 1)
        return f if s == 1 else f.scaled(s)

    def with_signs(self, signs: dict) -> "ComplexOfModules":
        return ComplexOfModules(self.rd, self.lam, self.field, self.depth, self.poset, self.terms, self.differentials, dict(signs), self.name)

    def with_component(self, cover, f: ModuleMap) -> "ComplexOfModules":
        diffs = dict(self.differentials)
        diffs[cover] = f
        return ComplexOfModules(self.rd, self.lam, self.field, self.depth, self.poset, self.terms, diffs, dict(self.signs), self.name)


def _transposed(f: ModuleMap, source: TruncatedModule, target: TruncatedModule, name: str) -> ModuleMap:
    """Transpose of f viewed as a map between the given contragredients."""
    return ModuleMap(source, target, {mu: transpose(b, f.source.dim(mu)) for mu, b in f.blocks.items()}, name)


def _lattice_complex(rd: RootDatum, lam, depth: int, fld, w0_word=None, name: str = "") -> ComplexOfModules:
    lam = rd.check(lam)
    if not is_regular_dominant(rd, lam):
        raise ValueError(f"{lam} is not regular dominant")
    poset = enumerate_weyl(rd, w0_word)
    lattice = submodule_lattice(rd, lam, depth, fld, w0_word)
    subs = {}
    duals = {}
    for w in poset.elements:
        sub = submodule_as_module(lattice[w], f"I({w.name})")
        subs[w] = sub
        d = contragredient(sub)
        d.name = f"D(I({w.name}))"
        duals[w] = d
    terms: dict = {}
    for w in poset.elements:
        terms.setdefault(w.length, []).append((w, duals[w]))
    diffs = {}
    for i, j in poset.covers:
        w, wp = poset.elements[i], poset.elements[j]
        inc = inclusion_map(lattice[wp], lattice[w], subs[wp], subs[w])
        diffs[(i, j)] = _transposed(inc, duals[w], duals[wp], f"d({w.name}->{wp.name})")
    return ComplexOfModules(rd, lam, fld, depth, poset, terms, diffs, assign_signs(poset), name)


def assemble_bgg(rd: RootDatum, lam, depth: int, field=QQ, w0_word=None) -> ComplexOfModules:
    """0 -> DM(lam) -> ... -> DM(w0.lam) -> 0 over Q."""
    return _lattice_complex(rd, lam, depth, field, w0_word, f"BGG({rd.label},{_wn(lam)})")


def assemble_cousin(rd: RootDatum, lam, depth: int, p: int, w0_word=None) -> ComplexOfModules:
    """The Cousin complex over F_p with quasi-Verma terms from the saturated lattice."""
    return _lattice_complex(rd, lam, depth, GF(p), w0_word, f"Cousin({rd.label},{_wn(lam)},p={p})")


def _wn(mu) -> str:
    return ",".join(str(x) for x in mu)


# ---------------------------------------------------------------- verification


def _degree_matrix(c: ComplexOfModules, m: int, mu) -> tuple:
    """Matrix of d^m at weight mu with the term dimensions (rows, cols)."""
    src = c.terms.get(m, [])
    tgt = c.terms.get(m + 1, [])
    cols = [mod.dim(mu) for _, mod in src]
    rows = [mod.dim(mu) for _, mod in tgt]
    mat = zeros(sum(rows), sum(cols))
    idx = {w: k for k, (w, _) in enumerate(src)}
    jdx = {w: k for k, (w, _) in enumerate(tgt)}
    fld = c.field
    for (i, j), f in c.differentials.items():
        w, wp = c.poset.elements[i], c.poset.elements[j]
        if w not in idx or wp not in jdx:
            continue
        b = c.component((i, j)).block(mu)
        r0 = sum(rows[: jdx[wp]])
        c0 = sum(cols[: idx[w]])
        for r, row in enumerate(b):
            for k, x in enumerate(row):
                if x:
                    mat[r0 + r][c0 + k] = fld.reduce(mat[r0 + r][c0 + k] + x)
    return mat, sum(rows), sum(cols)


def verify_complex(c: ComplexOfModules, margin: int) -> dict:
    """d^2 residuals, cohomology on the margin window, H^0 character and Euler characteristic."""
    if margin >= c.depth and c.depth > 0:
        raise ValueError("margin must be smaller than the depth")
    rd, fld = c.rd, c.field
    window = rd.window(c.lam, c.depth)
    inner = [mu for mu in window if rd.in_window(c.lam, mu, c.depth - margin)]
    degrees = range(min(c.terms), max(c.terms) + 1)
    d2_failures = []
    for mu in window:
        for m in degrees:
            a, ra, ca = _degree_matrix(c, m, mu)
            b, rb, cb = _degree_matrix(c, m + 1, mu)
            if ca and rb and ra:
                prod = matmul(b, a, fld, ra)
                if any(any(row) for row in prod):
                    d2_failures.append({"weight": list(mu), "degree": m})
    coh: dict = {m: {} for m in degrees}
    for mu in inner:
        ranks = {}
        dims = {}
        for m in degrees:
            mat, r, k = _degree_matrix(c, m, mu)
            dims[m] = k
            ranks[m] = rank(mat, fld) if r and k else 0
        for m in degrees:
            h = dims[m] - ranks[m] - ranks.get(m - 1, 0)
            if h:
                coh[m][mu] = h
    try:
        L = weyl_character(rd, c.lam)
    except ValueError:
        L = None
    h0 = coh.get(0, {})
    h0_ok = L is not None and all(h0.get(mu, 0) == L[mu] for mu in inner)
    euler_ok = L is not None
    for mu in inner:
        chi = sum((-1) ** m * sum(mod.dim(mu) for _, mod in c.terms.get(m, [])) for m in degrees)
        if L is None or chi != L[mu]:
            euler_ok = False
    higher_zero = all(not coh[m] for m in degrees if m > 0)
    return {
        "complex": c.name,
        "field": fld.name,
        "depth": c.depth,
        "margin": margin,
        "window_depth": c.depth - margin,
        "d2_ok": not d2_failures,
        "d2_failures": d2_failures,
        "signs_ok": signs_valid(c.poset, c.signs) if c.signs else True,
        "cohomology": {str(m): [[list(mu), h] for mu, h in sorted(coh[m].items())] for m in degrees},
        "higher_cohomology_zero": higher_zero,
        "h0_character": [[list(mu), h] for mu, h in sorted(h0.items())],
        "h0_dim": sum(h0.values()),
        "h0_ok": h0_ok,
        "euler_ok": euler_ok,
        "ok": (not d2_failures) and higher_zero and h0_ok and euler_ok,
    }


# ---------------------------------------------------------------- negative controls


def flip_sign(c: ComplexOfModules, cover=None) -> ComplexOfModules:
    cover = cover if cover is not None else sorted(c.differentials)[0]
    signs = dict(c.signs)
    signs[cover] = -signs.get(cover, 1)
    return c.with_signs(signs)


def perturb_entry(c: ComplexOfModules) -> ComplexOfModules:
    """Add 1 to one entry of a differential component, chosen where the next component can see it.

    The entry sits in column 0, row r of the block of d_(w -> w') at some weight,
    where column r of a following component d_(w' -> w'') is nonzero there; the
    change to d^2 is then that nonzero column.
    """
    fld = c.field
    for cover in sorted(c.differentials):
        f = c.differentials[cover]
        for mu in sorted(f.blocks, key=lambda nu: (c.rd.depth_below(c.lam, nu), nu)):
            b = f.block(mu)
            if not b or not b[0]:
                continue
            for nxt in sorted(k for k in c.differentials if k[0] == cover[1]):
                g = c.differentials[nxt].block(mu)
                if not g or not g[0]:
                    continue
                r = next((r for r in range(len(b)) if any(row[r] for row in g)), None)
                if r is None:
                    continue
                nb = [list(row) for row in b]
                nb[r][0] = fld.reduce(nb[r][0] + 1)
                blocks = dict(f.blocks)
                blocks[mu] = nb
                return c.with_component(cover, ModuleMap(f.source, f.target, blocks, f.name + "*"))
    raise ValueError("no entry whose perturbation is visible to d^2")


# ---------------------------------------------------------------- sl2 exact sequence


def sl2_exact_sequence(lam: int, p: int, depth: int, margin: int) -> dict:
    """0 -> DW_F(lam) -> DM_F(lam) -> M_F(-lam-2) -> 0 on the margin window."""
    rd = enumerate_weyl(_a1()).rd
    fld = GF(p)
    c = assemble_cousin(rd, (lam,), depth, p)
    s = c.poset.elements[1]
    dm = c.term(c.poset.identity)
    target = verma(rd, (-lam - 2,), depth - lam - 1, fld)
    psi = find_isomorphism(c.term(s), target)
    if psi is None:
        return {"ok": False, "reason": "quasi-Verma term is not isomorphic to the Verma module"}
    d = c.component((0, 1))
    pi_blocks = {}
    for mu in dm.dims:
        b = d.block(mu)
        if target.dim(mu) and dm.dim(mu):
            pi_blocks[mu] = matmul(psi.block(mu), b, fld, c.term(s).dim(mu)) if c.term(s).dim(mu) else zeros(target.dim(mu), dm.dim(mu))
    pi = ModuleMap(dm, target, pi_blocks, "pi")
    q = weyl_quotient_map(rd, (lam,), depth, fld)
    dw = contragredient(q.target)
    iota = ModuleMap(dw, dm, {mu: transpose(b, q.source.dim(mu)) for mu, b in q.blocks.items()}, "iota")
    inner = [mu for mu in rd.window((lam,), depth - margin)]
    rows = []
    ok = True
    for mu in inner:
        ri = map_rank(iota, mu) if dw.dim(mu) else 0
        rp = map_rank(pi, mu) if target.dim(mu) else 0
        comp_zero = True
        if dw.dim(mu) and target.dim(mu):
            prod = matmul(pi.block(mu), iota.block(mu), fld, dm.dim(mu))
            comp_zero = not any(any(r) for r in prod)
        inj = ri == dw.dim(mu)
        surj = rp == target.dim(mu)
        middle = ri + rp == dm.dim(mu)
        ok = ok and inj and surj and middle and comp_zero
        rows.append({"weight": list(mu), "dw": dw.dim(mu), "dm": dm.dim(mu), "m": target.dim(mu), "exact": inj and surj and middle and comp_zero})
    h0 = dw.total_dim()
    return {
        "lambda": lam,
        "prime": p,
        "depth": depth,
        "margin": margin,
        "module_maps_ok": not check_module_map(pi) and not check_module_map(iota),
        "h0_dim": h0,
        "h0_ok": h0 == lam + 1,
        "weights": rows,
        "ok": ok and h0 == lam + 1 and not check_module_map(pi) and not check_module_map(iota),
    }


def _a1():
    return build_root_datum("A1")


# ---------------------------------------------------------------- induced and twisted differentials


def _sl2_data(rd: RootDatum, i: int, lam):
    w0 = longest_element(enumerate_weyl(rd))
    low = dot_action(rd, w0, lam)
    s = weyl_element(rd, (i,))
    high = dot_action(rd, s, low)
    t = high[i]
    if t < 0:
        raise ValueError("the reflected weight is not dominant for the sl2 Levi")
    return low, high, t


def _induced_map(src: TruncatedModule, tgt: TruncatedModule, t: int, scale, fld, name) -> ModuleMap:
    """mono (x) d on the keys of two modules induced (or twisted) along the same complement."""
    blocks = {}
    for mu, keys in src.basis.items():
        tkeys = tgt.basis.get(mu)
        if not tkeys:
            continue
        tindex = {k: r for r, k in enumerate(tkeys)}
        mat = [[fld(0)] * len(keys) for _ in tkeys]
        for col, (mono, m) in enumerate(keys):
            if m >= t + 1:
                r = tindex.get((mono, m - t - 1))
                if r is None:
                    raise InconsistencyError("target key missing from the window")
                mat[r][col] = fld((-1) ** (m - t - 1) * scale)
        blocks[mu] = mat
    return ModuleMap(src, tgt, blocks, name)


def induced_differential_sl2_to_g(rd: RootDatum, i: int, lam, depth: int, field=QQ, scale: int = 1) -> ModuleMap:
    """U(g) (x)_{U(p_i)} d_sl2 : Ind(DM_sl2(s_i w0.lam)) -> Ind(M_sl2(w0.lam)) = M(w0.lam)."""
    lam = rd.check(lam)
    low, high, t = _sl2_data(rd, i, lam)
    src = parabolic_verma(rd, i, high, "dual", depth, field)
    tgt = parabolic_verma(rd, i, low, "verma", depth + t + 1, field)
    return _induced_map(src, tgt, t, scale, field, f"Ind{i + 1}(d)")


def twisted_differential(rd: RootDatum, w, i: int, lam, depth: int, field=QQ) -> ModuleMap:
    """Theta_w(Ind_i(d_sl2)) for w of length at most one with w s_i longer than w."""
    lam = rd.check(lam)
    if w.length == 0:
        return induced_differential_sl2_to_g(rd, i, lam, depth, field)
    if w.length > 1 or w.word[0] == i:
        raise UnsupportedTwist(f"twisted differential for {w.name} and s{i + 1} is outside the supported range")
    low, high, t = _sl2_data(rd, i, lam)
    src0 = parabolic_verma(rd, i, high, "dual", depth, QQ)
    src = twist_module(rd, w, src0, depth)
    j = w.word[0]
    gap = (t + 1) * sum(rd.root_coords(rd.reflect(j, rd.simple_roots[i])))
    tgt0 = parabolic_verma(rd, i, low, "verma", depth + gap, QQ)
    tgt = twist_module(rd, w, tgt0, depth + gap)
    src, tgt = change_field(src, field), change_field(tgt, field)
    return _induced_map(src, tgt, t, 1, field, f"Theta_{w.name}(Ind{i + 1}(d))")


def compare_with_lattice(f: ModuleMap, c: ComplexOfModules, cover, margin: int = 0) -> dict:
    """Whether ``f`` matches the lattice component ``cover`` up to a nonzero scalar, via term isomorphisms."""
    g = c.component(cover)
    a = find_isomorphism(f.source, g.source, margin)
    b = find_isomorphism(f.target, g.target, margin)
    if a is None or b is None:
        return {"isomorphic_terms": False, "scalar": None, "match": False}
    fld = c.field
    ratio = None
    match = True
    rd = c.rd
    for mu in f.source.dims:
        if not (rd.in_window(f.source.top, mu, f.source.depth - margin) and rd.in_window(g.source.top, mu, g.source.depth - margin)):
            continue
        if not (f.target.dim(mu) and g.target.dim(mu)) or not rd.in_window(f.target.top, mu, f.target.depth - margin):
            continue
        lhs = matmul(b.block(mu), f.block(mu), fld, f.target.dim(mu))
        rhs = matmul(g.block(mu), a.block(mu), fld, g.source.dim(mu))
        for r1, r2 in zip(lhs, rhs):
            for x, y in zip(r1, r2):
                if not x and not y:
                    continue
                if not x or not y:
                    match = False
                    continue
                q = fld.reduce(x * fld.inv(y))
                if ratio is None:
                    ratio = q
                elif q != ratio:
                    match = False
    return {"isomorphic_terms": True, "scalar": None if ratio is None else str(ratio), "match": match and ratio is not None}
