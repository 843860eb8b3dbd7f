"""Root data of types A1, A2, B2 in fundamental-weight coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import QQ, inverse

Weight = tuple  # tuple[int, ...] of fundamental-weight coordinates

_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
}

# half squared lengths of the simple roots, making (a_i, a_j) = cartan[i][j] * d_j symmetric
_HALF_LENGTHS = {"A1": (1,), "A2": (1, 1), "B2": (1, 2)}

# fixed reduced word for the longest element (0-based simple indices)
DEFAULT_W0_WORD = {"A1": (0,), "A2": (0, 1, 0), "B2": (0, 1, 0, 1)}


class UnsupportedType(ValueError):
    pass


@dataclass(frozen=True)
class RootDatum:
    label: str
    cartan: tuple
    half_lengths: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple:
        return tuple(tuple(row) for row in self.cartan)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def check(self, mu) -> Weight:
        mu = tuple(int(x) for x in mu)
        if len(mu) != self.rank:
            raise ValueError(f"weight {mu} has wrong length for {self.label}")
        return mu

    # -- coordinates

    def from_root_coords(self, c) -> Weight:
        """Weight of sum_i c_i alpha_i."""
        return tuple(sum(c[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))

    @cached_property
    def _cartan_inverse(self):

        return inverse([[Fraction(x) for x in row] for row in self.cartan], QQ)

    def root_coords(self, mu) -> tuple:
        """Coordinates of ``mu`` in the basis of simple roots (possibly fractional)."""
        inv = self._cartan_inverse
        out = []
        for i in range(self.rank):
            x = sum(mu[j] * inv[j][i] for j in range(self.rank))
            out.append(int(x) if x.denominator == 1 else x)
        return tuple(out)

    def depth_below(self, top, mu) -> int | None:
        """Height of ``top - mu`` if it lies in the positive root cone, else None."""
        c = self.root_coords(tuple(t - m for t, m in zip(top, mu)))
        if any(not isinstance(x, int) or x < 0 for x in c):
            return None
        return sum(c)

    def in_window(self, top, mu, depth: int) -> bool:
        d = self.depth_below(top, mu)
        return d is not None and d <= depth

    def window(self, top, depth: int) -> list[Weight]:
        """All weights ``top - beta`` with beta in Q+ of height at most ``depth``."""
        out = []

        def rec(i, c, budget):
            if i == self.rank:
                out.append(tuple(t - b for t, b in zip(top, self.from_root_coords(c))))
                return
            for k in range(budget + 1):
                rec(i + 1, c + (k,), budget - k)

        rec(0, (), depth)
        out.sort(key=lambda mu: (self.depth_below(top, mu), tuple(-x for x in self.root_coords(tuple(t - m for t, m in zip(top, mu))))))
        return out

    # -- reflections and form

    def reflect(self, i: int, mu) -> Weight:
        a = self.cartan[i]
        return tuple(m - mu[i] * a[j] for j, m in enumerate(mu))

    def inner(self, mu, nu) -> Fraction:
        """Invariant form with (alpha_i, alpha_i) = 2 d_i."""
        c = self.root_coords(nu)
        return sum(Fraction(c[j]) * mu[j] * self.half_lengths[j] for j in range(self.rank))

    def to_json(self) -> dict:
        return {"label": self.label, "cartan": [list(r) for r in self.cartan]}


def build_root_datum(label: str) -> RootDatum:
    if label not in _CARTAN:
        raise UnsupportedType(f"unsupported root datum {label!r}; expected one of {sorted(_CARTAN)}")
    return RootDatum(label, _CARTAN[label], _HALF_LENGTHS[label])


def positive_roots(rd: RootDatum) -> list[Weight]:
    """Positive roots ordered by height, found by closing the simple roots under reflections."""
    found = {tuple(int(i == j) for j in range(rd.rank)) for i in range(rd.rank)}
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            mu = rd.from_root_coords(c)
            for i in range(rd.rank):
                d = rd.root_coords(rd.reflect(i, mu))
                if all(x >= 0 for x in d) and d not in found:
                    found.add(d)
                    nxt.append(d)
        frontier = nxt
    ordered = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
    return [rd.from_root_coords(c) for c in ordered]


def height(rd: RootDatum, beta) -> int:
    return sum(rd.root_coords(beta))


def dot_action(rd: RootDatum, w, lam) -> Weight:
    lam = rd.check(lam)
    shifted = w.apply(tuple(x + 1 for x in lam))
    return tuple(x - 1 for x in shifted)


def is_dominant(rd: RootDatum, lam) -> bool:
    return all(x >= 0 for x in lam)


def is_regular_dominant(rd: RootDatum, lam) -> bool:
    """Dominant and with trivial dot-stabilizer (all coordinates of lam + rho positive)."""
    return all(x >= 0 for x in lam)


def is_dot_regular(rd: RootDatum, lam) -> bool:
    """No positive coroot pairs to zero with lam + rho."""
    shifted = tuple(x + 1 for x in lam)
    for beta in positive_roots(rd):
        # coroot pairing with beta: 2 (mu, beta) / (beta, beta)
        if rd.inner(shifted, beta) == 0:
            return False
    return True


def parse_weight(rd: RootDatum, text: str) -> Weight:
    try:
        parts = [int(x) for x in str(text).split(",")]
    except ValueError as exc:
        raise ValueError(f"cannot parse weight {text!r}") from exc
    return rd.check(parts)
