"""Formal characters truncated below a top weight.

Weyl characters are computed with Freudenthal's multiplicity formula, which
shares no code with the alternating Verma sum; agreement of the two is a
genuine check rather than an identity by construction.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .rootdata import RootDatum, dot_action, is_dominant, positive_roots
from .weyl import enumerate_weyl, longest_element


class TruncationMismatch(ValueError):
    pass


@dataclass
class FormalCharacter:
    rd: RootDatum
    top: tuple
    depth: int | None  # None means the support is complete
    mults: dict = field(default_factory=dict)

    def __getitem__(self, mu) -> int:
        return self.mults.get(tuple(mu), 0)

    def known_at(self, mu) -> bool:
        d = self.rd.depth_below(self.top, mu)
        return d is None or self.depth is None or d <= self.depth

    def total(self) -> int:
        return sum(self.mults.values())

    def support(self) -> list:
        return sorted((mu for mu, m in self.mults.items() if m), key=lambda mu: (self.rd.depth_below(self.top, mu) or 0, mu))

    def restricted(self, top, depth) -> "FormalCharacter":
        mults = {mu: m for mu, m in self.mults.items() if m and self.rd.in_window(top, mu, depth)}
        return FormalCharacter(self.rd, tuple(top), depth, mults)

    def __add__(self, other):
        return _combine(self, other, 1)

    def __sub__(self, other):
        return _combine(self, other, -1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"c{i + 1}" for i in range(self.rd.rank)] + ["multiplicity"])
        for mu in self.support():
            writer.writerow(list(mu) + [self.mults[mu]])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "top": list(self.top),
            "depth": self.depth,
            "weights": [[list(mu), self.mults[mu]] for mu in self.support()],
        }


def _combine(a: FormalCharacter, b: FormalCharacter, sign: int) -> FormalCharacter:
    if a.rd != b.rd:
        raise ValueError("characters over different root data")
    mults = dict(a.mults)
    for mu, m in b.mults.items():
        mults[mu] = mults.get(mu, 0) + sign * m
    return FormalCharacter(a.rd, a.top, a.depth, {k: v for k, v in mults.items() if v})


@lru_cache(maxsize=None)
def _partition_count(roots: tuple, beta: tuple) -> int:
    if not any(beta):
        return 1
    if not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total = 0
    k = 0
    while True:
        rem = tuple(b - k * r for b, r in zip(beta, first))
        if any(x < 0 for x in rem):
            break
        total += _partition_count(rest, rem)
        k += 1
    return total


def kostant_partition(rd: RootDatum, beta, depth: int | None = None) -> int:
    """Number of ways to write ``beta`` (root coordinates) as a sum of positive roots."""
    beta = tuple(beta)
    if any(x < 0 for x in beta):
        raise ValueError(f"{beta} is not in the positive root cone")
    if depth is not None and sum(beta) > depth:
        raise TruncationMismatch(f"height of {beta} exceeds depth {depth}")
    roots = tuple(rd.root_coords(a) for a in positive_roots(rd))
    return _partition_count(roots, beta)


def verma_character(rd: RootDatum, lam, depth: int) -> FormalCharacter:
    lam = rd.check(lam)
    mults = {}
    for mu in rd.window(lam, depth):
        beta = rd.root_coords(tuple(a - b for a, b in zip(lam, mu)))
        mults[mu] = kostant_partition(rd, beta)
    return FormalCharacter(rd, lam, depth, {k: v for k, v in mults.items() if v})


def weyl_dimension(rd: RootDatum, lam) -> int:
    num, den = Fraction(1), Fraction(1)
    shifted = tuple(x + 1 for x in lam)
    for beta in positive_roots(rd):
        num *= rd.inner(shifted, beta)
        den *= rd.inner(rd.rho, beta)
    value = num / den
    assert value.denominator == 1
    return int(value)


def weyl_character(rd: RootDatum, lam) -> FormalCharacter:
    """Character of the finite-dimensional simple module L(lam) by Freudenthal's formula."""
    lam = rd.check(lam)
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    w0 = longest_element(enumerate_weyl(rd))
    span = rd.depth_below(lam, w0.apply(lam))
    roots = positive_roots(rd)
    shifted = tuple(x + 1 for x in lam)
    norm_top = rd.inner(shifted, shifted)
    mults: dict = {lam: 1}
    for mu in rd.window(lam, span):
        if mu == lam or not _dominant_conjugate_below(rd, mu, lam):
            continue
        num = Fraction(0)
        for beta in roots:
            k = 1
            while True:
                nu = tuple(m + k * b for m, b in zip(mu, beta))
                if not rd.in_window(lam, nu, span):
                    break
                if mults.get(nu):
                    num += rd.inner(nu, beta) * mults[nu]
                k += 1
        mu_shift = tuple(x + 1 for x in mu)
        den = norm_top - rd.inner(mu_shift, mu_shift)
        m = 2 * num / den
        assert m.denominator == 1 and m >= 0
        if m:
            mults[mu] = int(m)
    return FormalCharacter(rd, lam, None, mults)


def _dominant_conjugate_below(rd: RootDatum, mu, lam) -> bool:
    nu = tuple(mu)
    while True:
        i = next((i for i, x in enumerate(nu) if x < 0), None)
        if i is None:
            break
        nu = rd.reflect(i, nu)
    return rd.depth_below(lam, nu) is not None


def euler_characteristic(rd: RootDatum, lam, depth: int) -> FormalCharacter:
    """Alternating sum of Verma characters over the dot orbit, truncated below lam."""
    lam = rd.check(lam)
    total = FormalCharacter(rd, lam, depth, {})
    for w in enumerate_weyl(rd).elements:
        mu = dot_action(rd, w, lam)
        d = rd.depth_below(lam, mu)
        if d is None or d > depth:
            continue
        part = verma_character(rd, mu, depth - d)
        total = total + part if w.length % 2 == 0 else total - part
    total.depth = depth
    return total


def char_equal_truncated(a: FormalCharacter, b: FormalCharacter, depth: int) -> bool:
    """Equality on the weights within ``depth`` of either top.

    A disagreement at a weight both characters know gives False; otherwise a
    weight beyond the stored depth of either character raises.
    """
    if a.rd != b.rd:
        raise ValueError("characters over different root data")
    rd = a.rd
    window = sorted(set(rd.window(a.top, depth)) | set(rd.window(b.top, depth)))
    unknown = None
    for mu in window:
        if not (a.known_at(mu) and b.known_at(mu)):
            unknown = unknown or mu
        elif a[mu] != b[mu]:
            return False
    if unknown is not None:
        raise TruncationMismatch(f"weight {unknown} lies beyond the stored depth of a character")
    return True
