"""Finite posets with their intervals and order-complex chains, plus spreads and monotone maps.

Elements are arbitrary hashable identifiers.  Every enumeration is sorted by
the index of first appearance in the element list, so matrices assembled
downstream are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import CycleError, NotComparable, NotMonotone, SizeCap, UnknownElement

Element = Hashable
Chain = tuple  # strictly increasing tuple of elements; dimension = len - 1

MAX_ELEMENTS = 64


@dataclass(frozen=True)
class Poset:
    """A finite poset stored as a dense, transitively closed boolean matrix.

    Build instances with :func:`poset_from_relations`; the constructor trusts
    that ``relation`` is already a partial order.
    """

    elements: tuple
    relation: tuple  # relation[i][j] is True iff elements[i] <= elements[j]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownElement(f"unknown element {x!r}") from None

    def leq(self, a, b) -> bool:
        return self.relation[self.index(a)][self.index(b)]

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def up(self, a) -> list:
        i = self.index(a)
        return [y for j, y in enumerate(self.elements) if self.relation[i][j]]

    def down(self, a) -> list:
        i = self.index(a)
        return [y for j, y in enumerate(self.elements) if self.relation[j][i]]

    def sort(self, xs: Iterable) -> list:
        return sorted(xs, key=self.index)

    @cached_property
    def covers(self) -> tuple:
        """Covering pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
        n = len(self.elements)
        rel = self.relation
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not rel[i][j]:
                    continue
                if not any(k != i and k != j and rel[i][k] and rel[k][j] for k in range(n)):
                    out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> dict:
        out = {x: [] for x in self.elements}
        for a, b in self.covers:
            out[b].append(a)
        return out

    @cached_property
    def linear_extension(self) -> tuple:
        # a < b implies |down(a)| < |down(b)|; ties broken by index
        size = [sum(col) for col in zip(*self.relation)]
        order = sorted(range(len(self.elements)), key=lambda i: (size[i], i))
        return tuple(self.elements[i] for i in order)

    @cached_property
    def _chains_by_min(self) -> dict:
        n = len(self.elements)
        rel = self.relation
        above = [[j for j in range(n) if j != i and rel[i][j]] for i in range(n)]
        out = {}
        for i in range(n):
            found = []
            stack = [(i,)]
            while stack:
                c = stack.pop()
                found.append(c)
                stack.extend(c + (j,) for j in above[c[-1]])
            found.sort(key=lambda c: (len(c), c))
            by_dim: dict[int, list] = {}
            for c in found:
                by_dim.setdefault(len(c) - 1, []).append(tuple(self.elements[k] for k in c))
            out[self.elements[i]] = by_dim
        return out

    @cached_property
    def height(self) -> int:
        """Dimension of the longest chain (0 for a nonempty antichain, -1 if empty)."""
        return max((max(d) for d in self._chains_by_min.values()), default=-1)

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, covers={list(self.covers)!r})"


def poset_from_relations(
    elements: Sequence, pairs: Iterable, max_size: int = MAX_ELEMENTS
) -> Poset:
    """Reflexive-transitive closure of ``pairs`` over ``elements``."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise ValueError("element identifiers must be distinct")
    if len(elements) > max_size:
        raise SizeCap(f"poset has {len(elements)} elements, cap is {max_size}")
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"relation references unknown element {x!r}")
        rel[index[a]][index[b]] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise CycleError(
                    f"relations force {elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}"
                )
    return Poset(elements, tuple(tuple(r) for r in rel))


def interval(p: Poset, a, c) -> list:
    if not p.leq(a, c):
        raise NotComparable(f"{a!r} is not <= {c!r}")
    return [b for b in p.up(a) if p.leq(b, c)]


def chains_with_min(p: Poset, a, d: int) -> list:
    """All chains of dimension ``d`` starting at ``a``, lexicographic by index."""
    p.index(a)
    return list(p._chains_by_min[a].get(d, ()))


def chains_with_min_in(p: Poset, Z: Iterable, d: int) -> list:
    out = []
    for a in p.sort(set(Z)):
        out.extend(p._chains_by_min[a].get(d, ()))
    return out


def chains_with_max(p: Poset, a, d: int) -> list:
    """All chains of dimension ``d`` ending at ``a``, lexicographic by index."""
    p.index(a)
    out = [c for b in p.down(a) for c in p._chains_by_min[b].get(d, ()) if c[-1] == a]
    out.sort(key=lambda c: tuple(p.index(x) for x in c))
    return out


def is_spread(p: Poset, Z: Iterable) -> bool:
    Z = set(Z)
    for a in Z:
        p.index(a)
    for a in Z:
        for c in Z:
            if a != c and p.leq(a, c):
                if any(b not in Z for b in interval(p, a, c)):
                    return False
    return True


def facets_with_min(p: Poset, tau: Chain, a) -> list:
    """Codimension-one faces of ``tau`` that keep its minimum, with signs.

    Deleting the vertex at index ``i`` carries the sign ``(-1)**i``.
    """
    if not tau or tau[0] != a:
        raise ValueError(f"chain {tau!r} does not start at {a!r}")
    return [(tau[:i] + tau[i + 1 :], -1 if i % 2 else 1) for i in range(1, len(tau))]


def is_monotone(f: Mapping, P: Poset, Q: Poset) -> bool:
    for a in P:
        if a not in f or f[a] not in Q:
            return False
    n = len(P)
    rel = P.relation
    for i in range(n):
        for j in range(n):
            if rel[i][j] and not Q.leq(f[P.elements[i]], f[P.elements[j]]):
                return False
    return True


@dataclass(frozen=True)
class MonotoneMap:
    source: Poset
    target: Poset
    values: dict

    def __post_init__(self):
        missing = [a for a in self.source if a not in self.values]
        if missing:
            raise UnknownElement(f"map is undefined at {missing[0]!r}")
        for a in self.source:
            self.target.index(self.values[a])
        if not is_monotone(self.values, self.source, self.target):
            raise NotMonotone("map does not preserve the order")
        object.__setattr__(self, "values", {a: self.values[a] for a in self.source})

    def __call__(self, a):
        return self.values[a]

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.values.items())))

    def fiber(self, y) -> list:
        return [a for a in self.source if self.values[a] == y]

    @classmethod
    def identity(cls, p: Poset) -> "MonotoneMap":
        return cls(p, p, {a: a for a in p})

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """Composite ``other ∘ self``."""
        return MonotoneMap(self.source, other.target, {a: other(self(a)) for a in self.source})
