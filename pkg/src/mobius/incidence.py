"""Integer incidence algebra of a finite poset and Möbius inversion.

Values live in the integers, which is the dimension ring of finite-dimensional
vector spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import PosetMismatch, UnknownElement
from .posets import MonotoneMap, Poset, interval


@dataclass(frozen=True, eq=False)
class IncidenceFunction:
    """Integer function on the intervals ``[a, b]`` (pairs with ``a <= b``)."""

    poset: Poset
    values: Mapping

    def __post_init__(self):
        p = self.poset
        want = {(a, b) for a in p for b in p.up(a)}
        if set(self.values) != want:
            raise ValueError("incidence functions must be defined exactly on the intervals")

    def __getitem__(self, ab) -> int:
        try:
            return self.values[ab]
        except KeyError:
            raise KeyError(f"{ab!r} is not an interval") from None

    def __eq__(self, other):
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return self.poset == other.poset and dict(self.values) == dict(other.values)

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return convolve(self, other)

    def table(self) -> list:
        """Rows ``(a, b, value)`` in canonical order."""
        p = self.poset
        return [(a, b, self.values[a, b]) for a in p for b in p.up(a)]


@dataclass(frozen=True, eq=False)
class GrFunction:
    """Integer-valued function on the elements of a poset."""

    poset: Poset
    values: Mapping

    def __post_init__(self):
        extra = set(self.values) - set(self.poset)
        if extra:
            raise UnknownElement(f"function defined at unknown element {sorted(map(repr, extra))[0]}")
        missing = [a for a in self.poset if a not in self.values]
        if missing:
            raise UnknownElement(f"function undefined at {missing[0]!r}")
        object.__setattr__(self, "values", {a: int(self.values[a]) for a in self.poset})

    def __getitem__(self, a) -> int:
        return self.values[a]

    def __eq__(self, other):
        if not isinstance(other, GrFunction):
            return NotImplemented
        return self.poset == other.poset and self.values == other.values

    def __add__(self, other: "GrFunction") -> "GrFunction":
        _same_poset(self.poset, other.poset)
        return GrFunction(self.poset, {a: self[a] + other[a] for a in self.poset})

    def as_list(self) -> list:
        return [self.values[a] for a in self.poset]

    def __repr__(self):
        return f"GrFunction({self.values!r})"


def _same_poset(p: Poset, q: Poset):
    if p != q:
        raise PosetMismatch("functions live on different posets")


def zeta(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, {(a, b): 1 for a in p for b in p.up(a)})


def identity_one(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, {(a, b): int(a == b) for a in p for b in p.up(a)})


def convolve(alpha: IncidenceFunction, beta: IncidenceFunction) -> IncidenceFunction:
    _same_poset(alpha.poset, beta.poset)
    p = alpha.poset
    out = {}
    for a in p:
        for c in p.up(a):
            out[a, c] = sum(alpha[a, b] * beta[b, c] for b in interval(p, a, c))
    return IncidenceFunction(p, out)


def mobius_recursive(p: Poset) -> IncidenceFunction:
    """Möbius function by the recursion ``mu[a, c] = -sum_{a <= b < c} mu[a, b]``."""
    pairs = [(a, c, interval(p, a, c)) for a in p for c in p.up(a)]
    pairs.sort(key=lambda t: len(t[2]))
    mu = {}
    for a, c, iv in pairs:
        if a == c:
            mu[a, c] = 1
        else:
            mu[a, c] = -sum(mu[a, b] for b in iv if b != c)
    return IncidenceFunction(p, mu)


def mobius_hall(p: Poset) -> IncidenceFunction:
    """Möbius function from chain counts: ``sum_i (-1)**i * #chains of length i``."""
    n = len(p)
    strict = [[int(i != j and p.relation[i][j]) for j in range(n)] for i in range(n)]
    # count[i][j] = number of chains from i to j with the current number of steps
    count = [row[:] for row in strict]
    total = [[-x for x in row] for row in strict]
    sign = -1
    for _ in range(2, n + 1):
        sign = -sign
        count = [
            [sum(count[i][k] * strict[k][j] for k in range(n)) for j in range(n)] for i in range(n)
        ]
        if not any(map(any, count)):
            break
        for i in range(n):
            for j in range(n):
                total[i][j] += sign * count[i][j]
    els = p.elements
    mu = {}
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if p.relation[i][j]:
                mu[a, b] = 1 if i == j else total[i][j]
    return IncidenceFunction(p, mu)


def upper_inversion(f: GrFunction, mu: IncidenceFunction | None = None) -> GrFunction:
    p = f.poset
    mu = mu or mobius_recursive(p)
    return GrFunction(p, {a: sum(f[b] * mu[a, b] for b in p.up(a)) for a in p})


def lower_inversion(f: GrFunction, mu: IncidenceFunction | None = None) -> GrFunction:
    p = f.poset
    mu = mu or mobius_recursive(p)
    return GrFunction(p, {a: sum(f[b] * mu[b, a] for b in p.down(a)) for a in p})


def pushforward_fn(f: MonotoneMap, m: GrFunction) -> GrFunction:
    _same_poset(f.source, m.poset)
    out = {z: 0 for z in f.target}
    for a in f.source:
        out[f(a)] += m[a]
    return GrFunction(f.target, out)


def pullback_fn(f: MonotoneMap, n: GrFunction) -> GrFunction:
    _same_poset(f.target, n.poset)
    return GrFunction(f.source, {a: n[f(a)] for a in f.source})
