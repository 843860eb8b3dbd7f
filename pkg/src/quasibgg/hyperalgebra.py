"""The Kostant Z-form in its divided-power PBW basis.

A divided monomial lists, in the global order (negative roots, Cartan,
positive roots), exponents ``a`` meaning ``F^(a)``, ``binom(H_i, c)`` and
``E^(b)``.  Products go through the ordinary PBW engine over Q and come back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .lie import ChevalleyAlgebra, chevalley_algebra
from .pbw import PBWAlgebra, add_into


class TruncationBoundError(ValueError):
    pass


class IntegralityError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _stirling1(n: int) -> tuple:
    """Signed coefficients of x(x-1)...(x-n+1) in powers of x."""
    poly = [1]
    for k in range(n):
        new = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] += c
            new[i] -= k * c
        poly = new
    return tuple(poly)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _standard_pbw(lie: ChevalleyAlgebra) -> PBWAlgebra:
    return PBWAlgebra(lie)


@dataclass
class AlgebraElement:
    lie: ChevalleyAlgebra
    terms: dict  # divided monomial -> scalar

    def __post_init__(self):
        self.terms = {m: c for m, c in self.terms.items() if c}

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __add__(self, other):
        return AlgebraElement(self.lie, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        return AlgebraElement(self.lie, add_into(dict(self.terms), other.terms, -1))

    def scale(self, c):
        return AlgebraElement(self.lie, {m: c * v for m, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def height(self) -> int:
        return max((monomial_height(self.lie, m) for m in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{monomial_name(self.lie, m)}" for m, c in sorted(self.terms.items()))

    def to_json(self) -> list:
        return [{"monomial": list(m), "coefficient": str(c)} for m, c in sorted(self.terms.items())]


def monomial_height(lie: ChevalleyAlgebra, mono) -> int:
    return sum(e * (lie.height(a) if not lie.is_cartan(a) else 1) for a, e in enumerate(mono))


def monomial_name(lie: ChevalleyAlgebra, mono) -> str:
    parts = []
    for a, e in enumerate(mono):
        if not e:
            continue
        if lie.is_cartan(a):
            parts.append(f"binom({lie.name(a)},{e})")
        else:
            parts.append(f"{lie.name(a)}^({e})" if e > 1 else lie.name(a))
    return "*".join(parts) or "1"


def generator(lie: ChevalleyAlgebra, name: str, n: int = 1) -> AlgebraElement:
    """``E_i^(n)``, ``F_i^(n)`` (simple) or ``binom(H_i, n)`` from names like 'E1', 'F2', 'H1'."""
    kind, i = name[0], int(name[1:]) - 1
    a = {"E": lie.e, "F": lie.f, "H": lie.h}[kind](i)
    mono = [0] * lie.dim
    mono[a] = n
    return AlgebraElement(lie, {tuple(mono): 1})


def lie_element(lie: ChevalleyAlgebra, a: int) -> AlgebraElement:
    mono = [0] * lie.dim
    mono[a] = 1
    return AlgebraElement(lie, {tuple(mono): 1})


def _to_ordinary(lie: ChevalleyAlgebra, x: AlgebraElement) -> dict:
    out: dict = {}
    for mono, c in x.terms.items():
        partial = {tuple(0 for _ in mono): Fraction(c)}
        for a, e in enumerate(mono):
            if not e:
                continue
            if lie.is_cartan(a):
                # binom(H, e) = (1/e!) sum_i s(e, i) H^i
                coeffs = _stirling1(e)
                nxt: dict = {}
                for m, v in partial.items():
                    for i, s in enumerate(coeffs):
                        if s:
                            mm = list(m)
                            mm[a] = i
                            add_into(nxt, {tuple(mm): v * Fraction(s, factorial(e))})
                partial = nxt
            else:
                partial = {tuple(e if k == a else mk for k, mk in enumerate(m)): v / factorial(e) for m, v in partial.items()}
        add_into(out, partial)
    return out


def _from_ordinary(lie: ChevalleyAlgebra, y: dict) -> AlgebraElement:
    out: dict = {}
    for mono, c in y.items():
        partial = {tuple(0 for _ in mono): Fraction(c)}
        for a, e in enumerate(mono):
            if not e:
                continue
            if lie.is_cartan(a):
                # H^e = sum_j S(e, j) j! binom(H, j)
                nxt: dict = {}
                for m, v in partial.items():
                    for j in range(e + 1):
                        s = _stirling2(e, j)
                        if s:
                            mm = list(m)
                            mm[a] = j
                            add_into(nxt, {tuple(mm): v * s * factorial(j)})
                partial = nxt
            else:
                partial = {tuple(e if k == a else mk for k, mk in enumerate(m)): v * factorial(e) for m, v in partial.items()}
        add_into(out, partial)
    return AlgebraElement(lie, {m: (int(v) if v.denominator == 1 else v) for m, v in out.items()})


def divided_product(x: AlgebraElement, y: AlgebraElement, bound: int = 20) -> AlgebraElement:
    """Product in the divided-power basis; every coefficient must come out integral."""
    lie = x.lie
    for z in (x, y):
        if z.height() > bound:
            raise TruncationBoundError(f"factor of height {z.height()} exceeds bound {bound}")
    pbw = _standard_pbw(lie)
    prod = pbw.mul(_to_ordinary(lie, x), _to_ordinary(lie, y))
    out = _from_ordinary(lie, prod)
    if out.height() > bound:
        raise TruncationBoundError(f"product of height {out.height()} exceeds bound {bound}")
    bad = [c for c in out.terms.values() if isinstance(c, Fraction) and c.denominator != 1]
    if bad and all(isinstance(c, int) or Fraction(c).denominator == 1 for z in (x, y) for c in z.terms.values()):
        raise IntegralityError(f"non-integral straightening coefficient {bad[0]}")
    return out


def specialize(x: AlgebraElement, field) -> AlgebraElement:
    return AlgebraElement(x.lie, {m: field(c) for m, c in x.terms.items()})


def adjoint_nilpotency_degree(x: AlgebraElement, y: AlgebraElement, bound: int = 64) -> int:
    """Least m with ad_x^m(y) = 0."""
    lie = x.lie
    pbw = _standard_pbw(lie)
    xo = _to_ordinary(lie, x)
    cur = _to_ordinary(lie, y)
    m = 0
    while cur:
        if m >= bound:
            raise TruncationBoundError("adjoint action did not terminate within the bound")
        cur = pbw.bracket(xo, cur)
        m += 1
    return m


def algebra(label: str) -> ChevalleyAlgebra:
    return chevalley_algebra(label)
