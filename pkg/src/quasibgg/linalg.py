"""Exact dense linear algebra over Q and F_p, plus integer lattice saturation.

Matrices are lists of rows.  A matrix for a linear map V -> W has ``dim W``
rows and ``dim V`` columns and acts on column vectors.  Scalars over Q are
:class:`fractions.Fraction`; over F_p they are plain ``int`` in ``range(p)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class Rationals:
    characteristic = 0
    name = "Q"

    def __call__(self, x):
        return Fraction(x)

    def reduce(self, x):
        return x

    def inv(self, x):
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.p = p
        self.name = f"F{p}"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        return pow(x, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Rationals | PrimeField:
    """``None``, ``0``, ``"Q"`` give QQ; a prime ``p`` or ``"F5"`` gives GF(p)."""
    if spec is None or spec == 0 or spec in ("Q", "QQ"):
        return QQ
    if isinstance(spec, (Rationals, PrimeField)):
        return spec
    if isinstance(spec, str) and spec.upper().startswith("F"):
        return GF(int(spec[1:]))
    return GF(int(spec))


def scalar_str(x) -> str:
    return str(x)


# ---------------------------------------------------------------- basics


def zeros(m: int, n: int) -> list[list]:
    return [[0] * n for _ in range(m)]


def identity(n: int, field) -> list[list]:
    one = field(1)
    return [[one if i == j else field(0) for j in range(n)] for i in range(n)]


def transpose(a: list[list], ncols: int | None = None) -> list[list]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a, b, field, inner: int | None = None) -> list[list]:
    """Product ``a @ b``; ``inner`` is needed only when it is zero."""
    if not a:
        return []
    n = len(b[0]) if b else 0
    if not b:
        return zeros(len(a), n)
    red = field.reduce
    out = []
    for row in a:
        acc = [0] * n
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append([red(v) for v in acc])
    return out


def matvec(a, v, field) -> list:
    red = field.reduce
    return [red(sum(x * y for x, y in zip(row, v) if x and y)) for row in a]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def convert(a, field) -> list[list]:
    return [[field(x) for x in row] for row in a]


# ---------------------------------------------------------------- elimination


def rref(rows: list[list], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    red, inv = field.reduce, field.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [red(x * s) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [red(x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows, field)[1])


def nullspace(a: list[list], ncols: int, field) -> list[list]:
    """Basis of ``{x : a x = 0}`` as a list of vectors of length ``ncols``."""
    if not a:
        return identity(ncols, field)
    r, pivots = rref(a, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field(0)] * ncols
        v[f] = field(1)
        for row, pc in zip(r, pivots):
            v[pc] = field.reduce(-row[f])
        basis.append(v)
    return basis


def solve(a: list[list], b: list, field):
    """One solution of ``a x = b`` or ``None``."""
    if not a:
        return [] if all(not x for x in b) else None
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field(0)] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[-1]
    return x


def inverse(a: list[list], field):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n, field))]
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in r]


class SubspaceCoordinates:
    """Coordinates of vectors with respect to a fixed independent row basis."""

    def __init__(self, basis: list[list], field):
        self.field = field
        self.dim = len(basis)
        self.basis = basis
        if not basis:
            self.pivots, self.reduced, self.transform = [], [], []
            return
        n = len(basis[0])
        k = len(basis)
        aug = [list(row) + e for row, e in zip(basis, identity(k, field))]
        r, pivots = rref(aug, field)
        if len(pivots) < k or any(p >= n for p in pivots):
            raise ValueError("basis rows are dependent")
        self.pivots = pivots
        self.reduced = [row[:n] for row in r]
        self.transform = [row[n:] for row in r]

    def coords(self, v: list):
        """Coordinates of ``v`` or ``None`` if ``v`` is outside the span."""
        red = self.field.reduce
        if not self.dim:
            return [] if all(not x for x in v) else None
        c = [v[p] for p in self.pivots]
        rest = list(v)
        for ci, row in zip(c, self.reduced):
            if ci:
                rest = [red(x - ci * y) for x, y in zip(rest, row)]
        if any(rest):
            return None
        k = self.dim
        return [red(sum(c[i] * self.transform[i][j] for i in range(k))) for j in range(k)]


def sparse_nullspace(equations: list[dict], nvars: int, field) -> list[list]:
    """Nullspace of a sparse system given as ``{var: coefficient}`` rows."""
    red, inv = field.reduce, field.inv
    pivot_rows: dict[int, dict] = {}
    for eq in equations:
        row = {k: red(v) for k, v in eq.items() if red(v)}
        # eliminate against existing pivots until stable
        changed = True
        while row and changed:
            changed = False
            for var in sorted(row):
                if var in pivot_rows and row.get(var):
                    f = row[var]
                    for k, v in pivot_rows[var].items():
                        nv = red(row.get(k, 0) - f * v)
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
                    changed = True
                    break
        if not row:
            continue
        var = min(row)
        s = inv(row[var])
        row = {k: red(v * s) for k, v in row.items()}
        for other in pivot_rows.values():
            if other.get(var):
                f = other[var]
                for k, v in row.items():
                    nv = red(other.get(k, 0) - f * v)
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivot_rows[var] = row
    free = [v for v in range(nvars) if v not in pivot_rows]
    basis = []
    for f in free:
        vec = [field(0)] * nvars
        vec[f] = field(1)
        for pv, row in pivot_rows.items():
            if row.get(f):
                vec[pv] = red(-row[f])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------- integers


def _clear_denominators(row) -> list[int]:
    den = 1
    for x in row:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix (zero rows dropped)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    return [row for row in m[:r]]


def integer_kernel(a: list[list[int]], ncols: int) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : a x = 0}`` via unimodular column reduction."""
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of u track ops
    m = [list(r) for r in a]
    col = 0
    for row_i in range(len(m)):
        if col >= ncols:
            break
        while True:
            nz = [j for j in range(col, ncols) if m[row_i][j]]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(m[row_i][j]))
            for mat in (m, u):
                for r in mat:
                    r[col], r[piv] = r[piv], r[col]
            done = True
            for j in range(col + 1, ncols):
                if m[row_i][j]:
                    q = m[row_i][j] // m[row_i][col]
                    for mat in (m, u):
                        for r in mat:
                            r[j] -= q * r[col]
                    if m[row_i][j]:
                        done = False
            if done:
                break
        if m[row_i][col]:
            col += 1
    return [[u[i][j] for i in range(ncols)] for j in range(col, ncols)]


def saturate(rows: list[list]) -> list[list[int]]:
    """Canonical Z-basis (row HNF) of ``span_Q(rows) ∩ Z^n``."""
    if not rows:
        return []
    n = len(rows[0])
    r, _ = rref(rows, QQ)
    if not r:
        return []
    perp = [_clear_denominators(v) for v in nullspace(r, n, QQ)]
    if not perp:
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        basis = integer_kernel(perp, n)
    return hnf_rows(basis)
