"""Weight-graded modules stored as action matrices on a truncation window."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charring import FormalCharacter
from .linalg import matmul, rank, transpose, zeros
from .rootdata import RootDatum


class InconsistencyError(RuntimeError):
    """A computation contradicted a structural guarantee; signals a bug or a false premise."""


def gen_key(kind: str, i: int, n: int) -> tuple:
    return (kind, i, n)


def gen_name(gen) -> str:
    kind, i, n = gen
    return f"{kind}{i + 1}^({n})"


def shift(rd: RootDatum, mu, gen) -> tuple:
    kind, i, n = gen
    a = rd.simple_roots[i]
    s = n if kind == "E" else -n
    return tuple(m + s * x for m, x in zip(mu, a))


@dataclass
class TruncatedModule:
    rd: RootDatum
    field: object
    top: tuple
    depth: int
    dims: dict  # weight -> dimension, weights within the window only
    action: dict  # generator -> {source weight: matrix}
    basis: dict = field(default_factory=dict, repr=False)  # weight -> labels
    name: str = ""
    realization: object = field(default=None, repr=False, compare=False)

    # -- window bookkeeping

    def in_window(self, mu) -> bool:
        return self.rd.in_window(self.top, mu, self.depth)

    def dim(self, mu) -> int:
        return self.dims.get(tuple(mu), 0)

    @property
    def weights(self) -> list:
        return [mu for mu in self.rd.window(self.top, self.depth)]

    @property
    def generators(self) -> list:
        return sorted(self.action)

    def max_power(self) -> int:
        return max((g[2] for g in self.action), default=0)

    def matrix(self, gen, mu):
        """Matrix of ``gen`` out of weight ``mu``, or None if the target is beyond the window."""
        mu = tuple(mu)
        target = shift(self.rd, mu, gen)
        if self.rd.depth_below(self.top, target) is None:
            return zeros(0, self.dim(mu))
        if not self.in_window(target):
            return None
        stored = self.action.get(gen, {}).get(mu)
        if stored is not None:
            return stored
        if gen[2] > self.max_power() and (self.dim(mu) and self.dim(target)):
            raise KeyError(f"{gen_name(gen)} is not stored for this module")
        return zeros(self.dim(target), self.dim(mu))

    def character(self) -> FormalCharacter:
        return FormalCharacter(self.rd, self.top, self.depth, {mu: d for mu, d in self.dims.items() if d})

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def apply(self, gen, mu, vec):
        m = self.matrix(gen, mu)
        if m is None:
            return None
        return [self.field.reduce(sum(x * y for x, y in zip(row, vec))) for row in m]

    def restrict(self, depth: int) -> "TruncatedModule":
        """Same module on a smaller window."""
        dims = {mu: d for mu, d in self.dims.items() if self.rd.in_window(self.top, mu, depth)}
        action = {}
        for gen, blocks in self.action.items():
            kept = {}
            for mu, m in blocks.items():
                if mu in dims and self.rd.in_window(self.top, shift(self.rd, mu, gen), depth) or (mu in dims and self.rd.depth_below(self.top, shift(self.rd, mu, gen)) is None):
                    kept[mu] = m
            action[gen] = kept
        basis = {mu: b for mu, b in self.basis.items() if mu in dims}
        return TruncatedModule(self.rd, self.field, self.top, depth, dims, action, basis, self.name, self.realization)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "root_datum": self.rd.to_json(),
            "top": list(self.top),
            "depth": self.depth,
            "field": self.field.name,
            "dims": [[list(mu), d] for mu, d in sorted(self.dims.items(), key=lambda t: (self.rd.depth_below(self.top, t[0]), t[0]))],
            "action": [
                {
                    "generator": gen_name(gen),
                    "source": list(mu),
                    "matrix": [[str(x) for x in row] for row in m],
                }
                for gen in sorted(self.action)
                for mu, m in sorted(self.action[gen].items())
                if m and any(row for row in m)
            ],
        }


@dataclass
class ModuleMap:
    source: TruncatedModule
    target: TruncatedModule
    blocks: dict  # weight -> matrix (target dim x source dim)
    name: str = ""

    def block(self, mu):
        mu = tuple(mu)
        b = self.blocks.get(mu)
        if b is None:
            return zeros(self.target.dim(mu), self.source.dim(mu))
        return b

    def common_weights(self, margin: int = 0) -> list:
        """Weights lying in both windows with ``margin`` of headroom in each."""
        out = []
        for mu in self.source.weights:
            if self.source.rd.in_window(self.source.top, mu, self.source.depth - margin) and self.target.rd.in_window(
                self.target.top, mu, self.target.depth - margin
            ):
                out.append(mu)
        return out

    def scaled(self, c) -> "ModuleMap":
        f = self.source.field
        c = f(c)
        return ModuleMap(self.source, self.target, {mu: [[f.reduce(c * x) for x in row] for row in b] for mu, b in self.blocks.items()}, self.name)


def _dimension_known(m: TruncatedModule, mu) -> bool:
    return m.in_window(mu) or m.rd.depth_below(m.top, mu) is None


def check_module_map(f: ModuleMap, margin: int = 0) -> list:
    """(weight, generator) pairs where the map fails to commute with the action."""
    failures = []
    src, tgt = f.source, f.target
    for mu in f.common_weights(margin):
        if not src.dim(mu):
            continue
        for gen in sorted(set(src.action) & set(tgt.action)):
            nu = shift(src.rd, mu, gen)
            if not (_dimension_known(src, nu) and _dimension_known(tgt, nu)):
                continue
            if not tgt.dim(nu):
                continue
            a, b = src.matrix(gen, mu), tgt.matrix(gen, mu)
            if a is None or b is None:
                continue
            lhs = matmul(f.block(nu), a, src.field) if src.dim(nu) else zeros(tgt.dim(nu), src.dim(mu))
            rhs = matmul(b, f.block(mu), src.field) if tgt.dim(mu) else zeros(tgt.dim(nu), src.dim(mu))
            if lhs != rhs:
                failures.append((mu, gen))
    return failures


def contragredient(m: TruncatedModule) -> TruncatedModule:
    """Graded dual with E^(n) and F^(n) exchanged by transposition."""
    action: dict = {}
    swapped = {("F" if kind == "E" else "E", i, n) for kind, i, n in m.action}
    for gen in sorted(set(m.action) | swapped):
        kind, i, n = gen
        other = ("F" if kind == "E" else "E", i, n)
        blocks = {}
        for mu in m.dims:
            nu = shift(m.rd, mu, gen)
            if not _dimension_known(m, nu):
                continue
            blocks[mu] = transpose(m.matrix(other, nu), m.dim(nu))
        action[gen] = blocks
    basis = {mu: [("dual", b) for b in labels] for mu, labels in m.basis.items()}
    return TruncatedModule(m.rd, m.field, m.top, m.depth, dict(m.dims), action, basis, f"D({m.name})", None)


def dual_map(f: ModuleMap) -> ModuleMap:
    """Transpose of ``f`` as a map between contragredients (source and target swap)."""
    src, tgt = contragredient(f.target), contragredient(f.source)
    blocks = {mu: transpose(b, f.source.dim(mu)) for mu, b in f.blocks.items()}
    return ModuleMap(src, tgt, blocks, f"D({f.name})")


def map_rank(f: ModuleMap, mu) -> int:
    b = f.block(mu)
    if not b or not b[0]:
        return 0
    return rank(b, f.source.field)


def map_is_injective(f: ModuleMap, margin: int = 0) -> bool:
    return all(map_rank(f, mu) == f.source.dim(mu) for mu in f.common_weights(margin))


def map_is_surjective(f: ModuleMap, margin: int = 0) -> bool:
    return all(map_rank(f, mu) == f.target.dim(mu) for mu in f.common_weights(margin))


def as_fraction_matrix(m) -> list:
    return [[Fraction(x) for x in row] for row in m]


def zero_map(source: TruncatedModule, target: TruncatedModule) -> ModuleMap:
    return ModuleMap(source, target, {}, "0")
