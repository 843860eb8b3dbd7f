"""Rank-one divided-power quantum group over A = Z[v, v^-1] and its specializations.

Modules are stored like :class:`TruncatedModule` with Laurent polynomial
entries; the K-action is implicit in the weight grading (K acts on the
weight-m line by v^m).  The quasi-Verma submodule of M_A(mu) is the A-span of
F^(n) v for n > mu, i.e. the saturation of the image of M_A(s.mu).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .bgg import assemble_bgg, assemble_cousin, verify_complex
from .charring import weyl_character
from .linalg import GF, QQ, rank
from .rootdata import build_root_datum
from .truncated import ModuleMap, TruncatedModule, check_module_map, dual_map, gen_key, shift
from .twisting import quasi_verma
from .weyl import weyl_element


class LaurentScalar:
    """Integer Laurent polynomial in v, stored as sorted (exponent, coefficient) pairs."""

    __slots__ = ("terms",)

    def __init__(self, coeffs=None):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for e, c in items:
            if int(c) != c:
                raise ValueError("Laurent coefficients must be integers")
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not in A")
            x = x.numerator
        return cls({0: int(x)})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentScalar":
        return cls({e: c})

    # -- arithmetic

    def __add__(self, other):
        other = LaurentScalar.coerce(other)
        return LaurentScalar(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar([(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        other = LaurentScalar.coerce(other)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        base = self if n >= 0 else self.unit_inverse()
        out = LaurentScalar.coerce(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- structure

    def bar(self) -> "LaurentScalar":
        """The involution v -> v^-1."""
        return LaurentScalar([(-e, c) for e, c in self.terms])

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and abs(self.terms[0][1]) == 1

    def unit_inverse(self) -> "LaurentScalar":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of A")
        e, c = self.terms[0]
        return LaurentScalar({-e: c})

    def evaluate(self, value):
        """Image under v -> value (a nonzero Fraction or int)."""
        value = Fraction(value)
        if not value:
            raise ZeroDivisionError("v must map to a nonzero value")
        return sum((c * value**e for e, c in self.terms), Fraction(0))

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def mod_cyclotomic(self, p: int) -> tuple:
        """Coefficients of the image in Z[v]/(Phi_p), as a tuple of length p-1."""
        acc = [0] * p
        for e, c in self.terms:
            acc[e % p] += c
        top = acc[p - 1]
        return tuple(a - top for a in acc[: p - 1])

    def exact_div(self, other) -> "LaurentScalar":
        """Quotient in A; raises if ``other`` does not divide ``self``."""
        other = LaurentScalar.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero in A")
        if not self:
            return LaurentScalar()
        lo_n, lo_d = self.terms[0][0], other.terms[0][0]
        num = {e - lo_n: c for e, c in self.terms}
        den = {e - lo_d: c for e, c in other.terms}
        deg_d = max(den)
        lead = den[deg_d]
        quot: dict = {}
        while num and max(num) >= deg_d:
            hi = max(num)
            q, r = divmod(num[hi], lead)
            if r:
                break
            quot[hi - deg_d] = q
            for e, c in den.items():
                k = e + hi - deg_d
                num[k] = num.get(k, 0) - q * c
                if not num[k]:
                    del num[k]
        if num:
            raise ArithmeticError(f"{other} does not divide {self} in A")
        quot = {e + lo_n - lo_d: c for e, c in quot.items()}
        return LaurentScalar(quot)

    # -- output

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.terms}

    def __repr__(self):
        return f"LaurentScalar({dict(self.terms)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class LaurentRing:
    """The ring A, in the interface the matrix helpers expect from a field."""

    characteristic = 0
    name = "A"

    def __call__(self, x):
        return LaurentScalar.coerce(x)

    def reduce(self, x):
        return LaurentScalar.coerce(x)

    def inv(self, x):
        return LaurentScalar.coerce(x).unit_inverse()

    def __repr__(self):
        return "A"


A = LaurentRing()
V = LaurentScalar.monomial(1)


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentScalar:
    """[n] = (v^n - v^-n) / (v - v^-1)."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentScalar({n - 1 - 2 * j: 1 for j in range(n)})


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int) -> LaurentScalar:
    """Balanced Gaussian binomial [n, k] for any integer n and k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return LaurentScalar.coerce(1)
    if n < 0:
        return quantum_binomial(k - n - 1, k) * (-1) ** k
    if k > n:
        return LaurentScalar()
    # [n, k] = v^-k [n-1, k] + v^(n-k) [n-1, k-1]
    return quantum_binomial(n - 1, k) * LaurentScalar.monomial(-k) + quantum_binomial(n - 1, k - 1) * LaurentScalar.monomial(n - k)


def binomial_by_division(n: int, k: int) -> LaurentScalar:
    """[n][n-1]...[n-k+1] / [k]! computed by exact division in A."""
    num = LaurentScalar.coerce(1)
    for s in range(k):
        num = num * quantum_integer(n - s)
    for s in range(1, k + 1):
        num = num.exact_div(quantum_integer(s))
    return num


# ---------------------------------------------------------------- modules


class QuantumModule(TruncatedModule):
    """A window of a U_A(sl2)-module; weights are 1-tuples, entries lie in A."""

    def cartan_binomial(self, mu, c: int, t: int) -> LaurentScalar:
        """Scalar by which [K; c, t] acts on the weight-mu space."""
        return quantum_binomial(tuple(mu)[0] + c, t)

    def evaluate(self, value, field=QQ) -> TruncatedModule:
        """Base change along v -> value into ``field``."""
        return _map_entries(self, lambda x: field(x.evaluate(value)), field, f"{self.name}|v={value}")


def _map_entries(m: TruncatedModule, phi, field, name) -> TruncatedModule:
    action = {gen: {mu: [[phi(x) for x in row] for row in b] for mu, b in blocks.items()} for gen, blocks in m.action.items()}
    return TruncatedModule(m.rd, field, m.top, m.depth, dict(m.dims), action, dict(m.basis), name, None)


def _map_of_map(f: ModuleMap, src, tgt, phi) -> ModuleMap:
    return ModuleMap(src, tgt, {mu: [[phi(x) for x in row] for row in b] for mu, b in f.blocks.items()}, f.name)


def _a1():
    return build_root_datum("A1")


def _lines(mu: int, lo: int, hi: int, depth: int, name: str) -> QuantumModule:
    """Span of b_n = F^(n) v_mu for lo <= n <= hi inside M_A(mu), as a module with its own window."""
    rd = _a1()
    top = (mu - 2 * lo,)
    wt = lambda n: (mu - 2 * n,)
    ns = range(lo, hi + 1)
    dims = {wt(n): 1 for n in ns}
    basis = {wt(n): [("F", n)] for n in ns}
    action: dict = {}
    for a in range(1, depth + 1):
        eblocks, fblocks = {}, {}
        for n in ns:
            if n - a >= lo:
                eblocks[wt(n)] = [[quantum_binomial(mu - n + a, a)]]
            if n + a <= hi:
                fblocks[wt(n)] = [[quantum_binomial(n + a, a)]]
        action[gen_key("E", 0, a)] = eblocks
        action[gen_key("F", 0, a)] = fblocks
    return QuantumModule(rd, A, top, depth, dims, action, basis, name, None)


def quantum_verma(mu: int, depth: int) -> QuantumModule:
    """M_A(mu) on the basis F^(n) v, 0 <= n <= depth."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return _lines(mu, 0, depth, depth, f"M_A({mu})")


def _require_dominant(mu: int):
    if mu < 0:
        raise ValueError(f"{mu} is not dominant")


def quantum_weyl(mu: int) -> QuantumModule:
    """W_A(mu), free of rank mu + 1."""
    _require_dominant(mu)
    return _lines(mu, 0, mu, mu, f"W_A({mu})")


def quasi_verma_q(mu: int, depth: int) -> QuantumModule:
    """M_A^s(s.mu): the A-span of F^(n) v with n > mu, on the window of M_A(mu) of the given depth."""
    _require_dominant(mu)
    return _lines(mu, mu + 1, depth, depth - mu - 1, f"M_A^s({-mu - 2})")


def quasi_embedding(mu: int, depth: int) -> ModuleMap:
    src, tgt = quasi_verma_q(mu, depth), quantum_verma(mu, depth)
    one = LaurentScalar.coerce(1)
    return ModuleMap(src, tgt, {w: [[one]] for w in src.dims}, "incl")


def _word(m: TruncatedModule, word: list, mu):
    """Matrix of the product of ``word`` (applied first to last) out of weight mu, or None if it leaves the window."""
    ring = m.field
    d = m.dim(mu)
    cur = [[ring(1) if i == j else ring(0) for j in range(d)] for i in range(d)]
    w = tuple(mu)
    for kind, n in word:
        if not n:
            continue
        g = gen_key(kind, 0, n)
        x = m.matrix(g, w)
        if x is None:
            return None
        w = shift(m.rd, w, g)
        cur = [[sum((row[k] * cur[k][j] for k in range(len(cur))), ring(0)) for j in range(d)] for row in x]
    return cur, w


def audit_quantum_relations(m: TruncatedModule, height: int = 12) -> list:
    """(weight, relation) pairs where the divided-power relations of U_A(sl2) fail on ``m``, up to total height ``height``."""
    failures = []
    for mu in sorted(m.dims):
        for a in range(1, height + 1):
            for b in range(1, height + 1 - a):
                # X^(a) X^(b) = [a+b, a] X^(a+b)
                for kind in ("E", "F"):
                    lhs, rhs = _word(m, [(kind, b), (kind, a)], mu), _word(m, [(kind, a + b)], mu)
                    if lhs is None or rhs is None:
                        continue
                    c = quantum_binomial(a + b, a)
                    if lhs[0] != [[c * x for x in row] for row in rhs[0]]:
                        failures.append((mu, f"{kind}^({a}){kind}^({b})"))
                # E^(a) F^(b) = sum_t [mu + a - b, t] F^(b-t) E^(a-t)
                lhs = _word(m, [("F", b), ("E", a)], mu)
                terms = [(quantum_binomial(mu[0] + a - b, t), _word(m, [("E", a - t), ("F", b - t)], mu)) for t in range(min(a, b) + 1)]
                if lhs is None or any(w is None for _, w in terms):
                    continue
                total = None
                for c, (mat, _) in terms:
                    scaled = [[c * x for x in row] for row in mat]
                    total = scaled if total is None else [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, scaled)]
                if lhs[0] != total:
                    failures.append((mu, f"E^({a})F^({b})"))
    return failures


# ---------------------------------------------------------------- exact sequence over A


def unit_elimination(cols: list) -> tuple:
    """Column-reduce a matrix over A using unit pivots only.

    ``cols`` is a list of columns.  Returns (reduced columns, pivot rows, complete)
    where ``complete`` means every column received a unit pivot, so the
    elementary divisors are all units.
    """
    cols = [list(c) for c in cols]
    pivots = []
    for k in range(len(cols)):
        r = next((r for r, x in enumerate(cols[k]) if r not in pivots and x and x.is_unit()), None)
        if r is None:
            return cols, pivots, False
        inv = cols[k][r].unit_inverse()
        cols[k] = [x * inv for x in cols[k]]
        for j in range(len(cols)):
            if j != k and cols[j][r]:
                c = cols[j][r]
                cols[j] = [x - c * y for x, y in zip(cols[j], cols[k])]
        pivots.append(r)
    return cols, pivots, True


def cokernel(f: ModuleMap) -> tuple:
    """(quotient QuantumModule, projection map, certified) for a weightwise A-split injection ``f``."""
    tgt = f.target
    data = {}
    certified = True
    for mu, d in tgt.dims.items():
        b = f.block(mu) if f.source.dim(mu) else []
        cols = [list(col) for col in zip(*b)] if b and b[0] else []
        red, piv, ok = unit_elimination(cols)
        certified &= ok
        free = [r for r in range(d) if r not in piv]
        data[mu] = (red, piv, free)

    def project(mu, vec):
        red, piv, free = data[mu]
        vec = list(vec)
        for col, r in zip(red, piv):
            c = vec[r]
            if c:
                vec = [x - c * y for x, y in zip(vec, col)]
        return [vec[r] for r in free]

    dims = {mu: len(data[mu][2]) for mu in tgt.dims if data[mu][2]}
    basis = {mu: [tgt.basis[mu][r] for r in data[mu][2]] for mu in dims}
    action: dict = {}
    for gen, blocks in tgt.action.items():
        out = {}
        for mu, mat in blocks.items():
            if mu not in dims:
                continue
            nu = shift(tgt.rd, mu, gen)
            if nu not in dims:
                continue
            cols = []
            for r in data[mu][2]:
                cols.append(project(nu, [row[r] for row in mat]))
            out[mu] = [list(row) for row in zip(*cols)]
        action[gen] = out
    quot = QuantumModule(tgt.rd, tgt.field, tgt.top, tgt.depth, dims, action, basis, f"coker({f.name})", None)
    proj = {}
    for mu in dims:
        cols = [project(mu, [1 if i == j else 0 for i in range(tgt.dims[mu])]) for j in range(tgt.dims[mu])]
        proj[mu] = [[LaurentScalar.coerce(x) for x in row] for row in zip(*cols)]
    return quot, ModuleMap(tgt, quot, proj, "proj"), certified


def _same_action(a: TruncatedModule, b: TruncatedModule, norm=None) -> list:
    """Weights/generators where the (normalized) actions of ``a`` and ``b`` differ on their common window."""
    norm = norm or (lambda mu: 1)
    diffs = []
    for gen in sorted(set(a.action) | set(b.action)):
        for mu in sorted(set(a.dims) & set(b.dims)):
            nu = shift(a.rd, mu, gen)
            known = lambda m: m.in_window(nu) or m.rd.depth_below(m.top, nu) is None
            if not (known(a) and known(b)):
                continue
            x, y = a.matrix(gen, mu), b.matrix(gen, mu)
            if x is None or y is None:
                continue
            if not a.dim(nu) and not b.dim(nu):
                continue
            c = norm(nu) * norm(mu)
            if [[c * e for e in row] for row in x] != [[a.field.reduce(e) for e in row] for row in y] and [[a.field.reduce(c * e) for e in row] for row in x] != y:
                diffs.append({"generator": f"{gen[0]}^({gen[2]})", "weight": list(mu), "left": [[str(e) for e in r] for r in x], "right": [[str(e) for e in r] for r in y]})
    return diffs


def _ranks_exact(inc: ModuleMap, proj: ModuleMap, field) -> bool:
    """0 -> S -> M -> W -> 0 exact weightwise over ``field``."""
    s, m, w = inc.source, inc.target, proj.target
    for mu, d in m.dims.items():
        ds, dw = s.dim(mu), w.dim(mu)
        ri = rank(inc.block(mu), field) if ds else 0
        rp = rank(proj.block(mu), field) if dw else 0
        if ri != ds or rp != dw or ds + dw != d:
            return False
        if ds and dw:
            comp = [[field.reduce(sum(x * y for x, y in zip(row, col))) for col in zip(*inc.block(mu))] for row in proj.block(mu)]
            if any(x for row in comp for x in row):
                return False
    return True


def specialize_cyclotomic(m: TruncatedModule, p: int) -> TruncatedModule:
    """Base change A -> A/(Phi_p) -> F_p; the composite sends v to 1 and reduces integers mod p."""
    fld = GF(p)

    def phi(x):
        x = LaurentScalar.coerce(x)
        direct = fld(x.at_one())
        via = fld(sum(x.mod_cyclotomic(p)))
        if direct != via:
            raise ArithmeticError("the two routes to F_p disagree")
        return direct

    return _map_entries(m, phi, fld, f"{m.name}|F{p}")


def _specialize_map(f: ModuleMap, p: int) -> ModuleMap:
    fld = GF(p)
    return _map_of_map(f, specialize_cyclotomic(f.source, p), specialize_cyclotomic(f.target, p), lambda x: fld(x.at_one()))


def _evaluate_map(f: ModuleMap, value, field=QQ) -> ModuleMap:
    return _map_of_map(f, f.source.evaluate(value, field), f.target.evaluate(value, field), lambda x: field(x.evaluate(value)))


EVALUATION_POINTS = (2, Fraction(1, 2), -1, 3, Fraction(-2, 3))
CYCLOTOMIC_PRIMES = (2, 3, 5, 7)


def quasi_bgg_rank1(mu: int, depth: int) -> dict:
    """Certify 0 -> M_A^s(s.mu) -> M_A(mu) -> W_A(mu) -> 0 on the window."""
    _require_dominant(mu)
    inc = quasi_embedding(mu, depth)
    quot, proj, split = cokernel(inc)
    weyl = quantum_weyl(mu)
    full_rank = all(
        rank([[x.evaluate(2) for x in row] for row in inc.block(w)], QQ) == inc.source.dim(w) for w in inc.source.dims
    )
    evaluations = {}
    for value in EVALUATION_POINTS:
        evaluations[str(value)] = _ranks_exact(_evaluate_map(inc, value), _evaluate_map(proj, value), QQ)
    cyclotomic = {}
    for p in CYCLOTOMIC_PRIMES:
        cyclotomic[str(p)] = _ranks_exact(_specialize_map(inc, p), _specialize_map(proj, p), GF(p))
    audits = {
        "verma": audit_quantum_relations(inc.target),
        "quasi_verma": audit_quantum_relations(inc.source),
        "cokernel": audit_quantum_relations(quot),
    }
    maps_ok = not check_module_map(inc) and not check_module_map(proj)
    weyl_match = depth < mu or not _same_action(quot, weyl)
    # generic evaluation against the char-0 sl2 complex
    generic = _generic_comparison(mu, depth, inc, proj)
    report = {
        "mu": mu,
        "depth": depth,
        "window": [mu - 2 * depth, mu],
        "full_column_rank": full_rank,
        "unit_elementary_divisors": split,
        "cokernel_rank": quot.total_dim(),
        "cokernel_rank_ok": quot.total_dim() == min(mu, depth) + 1,
        "cokernel_is_weyl": weyl_match,
        "exact_over_A": split and _ranks_exact_symbolic(inc, proj),
        "evaluations": evaluations,
        "cyclotomic": cyclotomic,
        "module_maps_ok": maps_ok,
        "relation_failures": {k: [[list(w), g] for w, g in v] for k, v in audits.items()},
        "generic": generic,
    }
    report["ok"] = bool(
        full_rank
        and split
        and report["cokernel_rank_ok"]
        and weyl_match
        and report["exact_over_A"]
        and all(evaluations.values())
        and all(cyclotomic.values())
        and maps_ok
        and not any(audits.values())
        and generic["ok"]
    )
    return report


def _ranks_exact_symbolic(inc: ModuleMap, proj: ModuleMap) -> bool:
    """Composite vanishes over A and ranks add up (ranks certified by unit pivots)."""
    for mu, d in inc.target.dims.items():
        ds, dw = inc.source.dim(mu), proj.target.dim(mu)
        if ds + dw != d:
            return False
        if ds and dw:
            b, p = inc.block(mu), proj.block(mu)
            for row in p:
                for col in zip(*b):
                    if sum((x * y for x, y in zip(row, col)), LaurentScalar()):
                        return False
    return True


def _generic_comparison(mu: int, depth: int, inc: ModuleMap, proj: ModuleMap) -> dict:
    """Evaluate at v = 2, dualize, and compare with the sl2 BGG complex over Q."""
    rd = _a1()
    d = dual_map(_evaluate_map(inc, 2))
    h0 = {}
    for w in d.source.dims:
        k = d.source.dim(w) - (rank(d.block(w), QQ) if d.target.dim(w) else 0)
        if k:
            h0[w] = k
    surjective = all(rank(d.block(w), QQ) == d.target.dim(w) for w in d.target.dims if d.source.dim(w))
    margin = 1
    bgg = verify_complex(assemble_bgg(rd, (mu,), depth), margin)
    expected = {tuple(w): h for w, h in weyl_character(rd, (mu,)).mults.items()} if depth >= mu else None
    same_h0 = {tuple(w): h for w, h in bgg["h0_character"]} == h0 if isinstance(bgg["h0_character"], list) else None
    return {
        "h0_dim": sum(h0.values()),
        "h1_zero": surjective,
        "bgg_ok": bgg["ok"],
        "matches_bgg": bool(same_h0),
        "matches_weyl": expected is None or expected == h0,
        "ok": surjective and bgg["ok"] and bool(same_h0) and (expected is None or expected == h0),
    }


# ---------------------------------------------------------------- comparison with the hyperalgebra


def _alternating(top: int):
    return lambda w: 1 if ((top - w[0]) // 2) % 2 == 0 else -1


def compare_specialization(mu: int, p: int, depth: int) -> dict:
    """Match the cyclotomic specialization of the quantum quasi-BGG against the Cousin complex and the twisted modules.

    Normalization: the quantum sequence is dualized (contragredient), after
    which it matches the Cousin complex on the nose; the twisted quasi-Verma
    over F_p agrees with the dualized Verma after rescaling the weight
    mu - 2k line by (-1)^k.
    """
    _require_dominant(mu)
    rd = _a1()
    fld = GF(p)
    boundary = (mu + 1) % p == 0
    inc = _specialize_map(quasi_embedding(mu, depth), p)
    d_inc = dual_map(inc)  # D(M_A(mu))_p -> D(M_A^s)_p
    dm, ds = d_inc.source, d_inc.target
    cousin = assemble_cousin(rd, (mu,), depth, p)
    e, s = weyl_element(rd, ()), weyl_element(rd, (0,))
    cover = next(iter(cousin.differentials))
    comp = cousin.component(cover)
    ce, cs = cousin.term(e), cousin.term(s)
    diffs = {
        "term_e": _same_action(dm, ce),
        "term_s": _same_action(ds, cs),
        "differential": _block_diffs(d_inc, comp, fld),
    }
    tw_s = quasi_verma(rd, s, (mu,), depth, fld)
    tw_e = quasi_verma(rd, e, (mu,), depth, fld)
    diffs["twisted_s"] = _same_action(dm, tw_s, _alternating(mu))
    diffs["twisted_e"] = _same_action(ds, tw_e, _alternating(-mu - 2))
    match = not any(diffs.values())
    return {
        "mu": mu,
        "prime": p,
        "depth": depth,
        "window": [mu - 2 * depth, mu],
        "normalization": {"complex": "contragredient, identity on lines", "twisted": "(-1)^k on the line F^(k) v"},
        "boundary": boundary,
        "match": match,
        "diffs": diffs,
        "ok": match or boundary,
    }


def _block_diffs(f: ModuleMap, g: ModuleMap, fld) -> list:
    out = []
    for mu in sorted(set(f.source.dims) & set(g.source.dims)):
        if not (f.target.dim(mu) or g.target.dim(mu)):
            continue
        a = [[fld.reduce(x) for x in row] for row in f.block(mu)]
        b = [[fld.reduce(x) for x in row] for row in g.block(mu)]
        if a != b:
            out.append({"weight": list(mu), "left": a, "right": b})
    return out
