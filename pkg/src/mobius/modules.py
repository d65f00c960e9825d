"""Poset modules valued in finite-dimensional vector spaces.

A module is stored by its dimensions and the matrices on covering relations;
the map for any ``a <= b`` is derived (and cached) by composing covers, which
is also how functoriality is validated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    FieldMismatch,
    FunctorialityError,
    NotASpread,
    NotComparable,
    PosetMismatch,
    ShapeMismatch,
)
from .incidence import GrFunction
from .linalg import (
    QQ,
    FieldSpec,
    Matrix,
    block_matrix,
    cokernel_projection,
    compose,
    solve,
    sparse_kernel,
)
from .posets import MonotoneMap, Poset, is_spread


class PosetModule:
    """A functor from a finite poset to vector spaces over ``field``.

    ``cover_maps[(a, b)]`` is the ``dims[b] x dims[a]`` matrix of ``M(a <= b)``
    for each covering pair.  Covers whose map is forced to be empty (one side
    zero-dimensional) may be omitted.  With ``validate=True`` a non-commuting
    diagram raises :class:`FunctorialityError`.
    """

    def __init__(
        self,
        poset: Poset,
        field: FieldSpec,
        dims: Mapping,
        cover_maps: Mapping,
        *,
        validate: bool = True,
    ):
        self.poset = poset
        self.field = field
        missing = [a for a in poset if a not in dims]
        if missing:
            raise ShapeMismatch(f"no dimension given for {missing[0]!r}")
        self.dims = {a: int(dims[a]) for a in poset}
        if any(d < 0 for d in self.dims.values()):
            raise ShapeMismatch("dimensions must be non-negative")
        covers = set(poset.covers)
        for key in cover_maps:
            if key not in covers:
                raise ShapeMismatch(f"{key[0]!r}<{key[1]!r} is not a covering relation")
        maps = {}
        for a, b in poset.covers:
            shape = (self.dims[b], self.dims[a])
            m = cover_maps.get((a, b))
            if m is None:
                if 0 not in shape:
                    raise ShapeMismatch(f"missing map for cover {a!r}<{b!r}")
                m = Matrix.zeros(field, *shape)
            if m.field != field:
                raise FieldMismatch(f"map on {a!r}<{b!r} is over {m.field}, module over {field}")
            if m.shape != shape:
                raise ShapeMismatch(f"map on {a!r}<{b!r} has shape {m.shape}, expected {shape}")
            maps[a, b] = m
        self.cover_maps = maps
        self._maps, self.violation = self._derive_maps()
        if validate and self.violation is not None:
            a, b = self.violation
            raise FunctorialityError(f"paths from {a!r} to {b!r} give different maps")

    def _derive_maps(self):
        p = self.poset
        pairs = [(a, b) for a in p for b in p.up(a)]
        pairs.sort(key=lambda ab: sum(1 for c in p.up(ab[0]) if p.leq(c, ab[1])))
        out = {}
        violation = None
        for a, b in pairs:
            if a == b:
                out[a, b] = Matrix.identity(self.field, self.dims[a])
                continue
            first = None
            for c in p.lower_covers[b]:
                if not p.leq(a, c):
                    continue
                m = compose(self.cover_maps[c, b], out[a, c])
                if first is None:
                    first = m
                elif m != first and violation is None:
                    violation = (a, b)
            out[a, b] = first
        return out, violation

    def map(self, a, b) -> Matrix:
        try:
            return self._maps[a, b]
        except KeyError:
            raise NotComparable(f"{a!r} is not <= {b!r}") from None

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def __eq__(self, other):
        if not isinstance(other, PosetModule):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.field == other.field
            and self.dims == other.dims
            and self.cover_maps == other.cover_maps
        )

    def __repr__(self):
        return f"PosetModule(dims={self.dims!r}, field={self.field})"


def map_between(M: PosetModule, a, b) -> Matrix:
    return M.map(a, b)


def check_functoriality(M: PosetModule) -> tuple:
    """``(True, None)`` or ``(False, (a, b))`` for the first non-commuting interval."""
    return (M.violation is None, M.violation)


def zero_module(p: Poset, field: FieldSpec = QQ) -> PosetModule:
    return PosetModule(p, field, {a: 0 for a in p}, {})


def constant_module(p: Poset, dim: int, field: FieldSpec = QQ) -> PosetModule:
    ident = Matrix.identity(field, dim)
    return PosetModule(p, field, {a: dim for a in p}, {c: ident for c in p.covers})


def _support_module(p: Poset, support: set, dim: int, field: FieldSpec) -> PosetModule:
    dims = {b: dim if b in support else 0 for b in p}
    ident = Matrix.identity(field, dim)
    maps = {(a, b): ident for a, b in p.covers if a in support and b in support}
    return PosetModule(p, field, dims, maps)


def principal_cofree(p: Poset, a, dim: int, field: FieldSpec = QQ) -> PosetModule:
    """``dim``-dimensional on the down-set of ``a``, zero elsewhere."""
    return _support_module(p, set(p.down(a)), dim, field)


def indicator(p: Poset, Z: Iterable, field: FieldSpec = QQ) -> PosetModule:
    Z = set(Z)
    if not is_spread(p, Z):
        raise NotASpread(f"{p.sort(Z)!r} is not a spread")
    return _support_module(p, Z, 1, field)


def direct_sum(modules: Sequence[PosetModule]) -> PosetModule:
    """Biproduct of modules over a common poset, summands in list order."""
    if not modules:
        raise ValueError("direct_sum needs at least one summand")
    p, field = modules[0].poset, modules[0].field
    for m in modules:
        if m.poset != p:
            raise PosetMismatch("summands live on different posets")
        if m.field != field:
            raise FieldMismatch("summands live over different fields")
    dims = {a: sum(m.dims[a] for m in modules) for a in p}
    maps = {}
    for a, b in p.covers:
        blocks = {(i, i): m.cover_maps[a, b] for i, m in enumerate(modules)}
        maps[a, b] = block_matrix(field, [m.dims[b] for m in modules], [m.dims[a] for m in modules], blocks)
    return PosetModule(p, field, dims, maps)


def dimension_function(M: PosetModule) -> GrFunction:
    return GrFunction(M.poset, dict(M.dims))


def _random_entry(rng: random.Random, field: FieldSpec):
    return field.coerce(rng.choice((0, 0, 1, 1, -1, 2, -2, 3)))


def random_module(p: Poset, field: FieldSpec = QQ, max_dim: int = 3, seed: int = 0) -> PosetModule:
    """A random functorial module, deterministic in ``seed``.

    Elements are visited along a linear extension.  At ``b`` a random linear
    map out of the colimit of the module over the strict down-set of ``b`` is
    drawn; the cover maps into ``b`` are its restrictions, so every square
    commutes by construction.
    """
    rng = random.Random(seed)
    dims = {a: rng.randint(0, max_dim) for a in p}
    maps: dict = {}
    for b in p.linear_extension:
        below = [a for a in p.down(b) if a != b]
        if not below:
            continue
        if dims[b] == 0 or not any(dims[a] for a in below):
            for a in p.lower_covers[b]:
                maps[a, b] = Matrix.zeros(field, dims[b], dims[a])
            continue
        partial = _partial_module(p, field, dims, maps, below)
        colim = Colimit(partial, below)
        L = Matrix(
            field,
            dims[b],
            colim.dim,
            tuple(tuple(_random_entry(rng, field) for _ in range(colim.dim)) for _ in range(dims[b])),
        )
        for a in p.lower_covers[b]:
            maps[a, b] = compose(L, colim.injection(a))
    return PosetModule(p, field, dims, maps)


class _PartialModule:
    """Just enough of a module (dims and cover maps on a down-set) for colimits."""

    def __init__(self, poset, field, dims, maps):
        self.poset, self.field, self.dims, self.cover_maps = poset, field, dims, maps


def _partial_module(p, field, dims, maps, support):
    s = set(support)
    return _PartialModule(p, field, dims, {k: v for k, v in maps.items() if k[0] in s and k[1] in s})


def _index_covers(p: Poset, index: Sequence) -> list:
    s = set(index)
    return [(a, b) for a, b in p.covers if a in s and b in s]


def _offsets(M, index: Sequence) -> tuple:
    off, total = {}, 0
    for a in index:
        off[a] = total
        total += M.dims[a]
    return off, total


class Limit:
    """Limit of ``M`` over a convex index subposet, realised inside the product.

    ``basis`` has one column per basis vector of the limit, written in the
    coordinates of ``prod_{a in index} M(a)``.
    """

    def __init__(self, M: PosetModule, index: Sequence):
        p, field = M.poset, M.field
        self.module = M
        self.index = p.sort(index)
        self.offsets, self.total = _offsets(M, self.index)
        neg_one = field.coerce(-1)
        rows = []
        for a, b in _index_covers(p, self.index):
            mab = M.cover_maps[a, b]
            oa, ob = self.offsets[a], self.offsets[b]
            for r in range(M.dims[b]):
                row = {oa + k: x for k, x in enumerate(mab.data[r]) if x}
                row[ob + r] = row.get(ob + r, 0) + neg_one
                rows.append(row)
        vecs = sparse_kernel(field, rows, self.total)
        self.dim = len(vecs)
        self.basis = (
            Matrix(field, self.total, self.dim, tuple(zip(*vecs))) if vecs else Matrix.zeros(field, self.total, 0)
        )

    def projection(self, a) -> Matrix:
        o = self.offsets[a]
        return self.basis.rows_of(range(o, o + self.module.dims[a]))

    def restriction_to(self, other: "Limit") -> Matrix:
        """Map induced on limits by shrinking the index set to ``other.index``."""
        rows = []
        for a in other.index:
            o = self.offsets[a]
            rows.extend(range(o, o + self.module.dims[a]))
        return solve(other.basis, self.basis.rows_of(rows))


class Colimit:
    """Colimit of ``M`` over a convex index subposet, as a quotient of the sum."""

    def __init__(self, M, index: Sequence):
        p, field = M.poset, M.field
        self.module = M
        self.index = p.sort(index)
        self.offsets, self.total = _offsets(M, self.index)
        covers = _index_covers(p, self.index)
        neg_one = field.coerce(-1)
        cols = []
        for a, b in covers:
            mab = M.cover_maps[a, b]
            oa, ob = self.offsets[a], self.offsets[b]
            for k in range(M.dims[a]):
                col = {ob + r: mab.data[r][k] for r in range(M.dims[b]) if mab.data[r][k]}
                col[oa + k] = col.get(oa + k, 0) + neg_one
                cols.append(col)
        relations = Matrix(
            field,
            len(cols),
            self.total,
            tuple(tuple(field.coerce(c.get(i, 0)) for i in range(self.total)) for c in cols),
        ).T
        self.quotient = cokernel_projection(relations)
        self.dim = self.quotient.rows
        self.section = solve(self.quotient, Matrix.identity(field, self.dim))

    def injection(self, a) -> Matrix:
        o = self.offsets[a]
        return self.quotient.cols_of(range(o, o + self.module.dims[a]))

    def extension_to(self, other: "Colimit") -> Matrix:
        """Map induced on colimits by enlarging the index set to ``other.index``."""
        blocks = [other.injection(a) for a in self.index]
        inc = Matrix(
            self.module.field,
            other.dim,
            self.total,
            tuple(tuple(x for blk in blocks for x in blk.data[r]) for r in range(other.dim)),
        ) if blocks else Matrix.zeros(self.module.field, other.dim, 0)
        return compose(inc, self.section)


def pullback_module(f: MonotoneMap, N: PosetModule) -> PosetModule:
    if f.target != N.poset:
        raise PosetMismatch("module does not live on the target of the map")
    P = f.source
    dims = {a: N.dims[f(a)] for a in P}
    maps = {(a, b): N.map(f(a), f(b)) for a, b in P.covers}
    return PosetModule(P, N.field, dims, maps)


def pushforward_limits(f: MonotoneMap, M: PosetModule) -> dict:
    """``{x: Limit of M over {a : f(a) >= x}}`` for every ``x`` in the target."""
    P, Q = f.source, f.target
    return {x: Limit(M, [a for a in P if Q.leq(x, f(a))]) for x in Q}


def pushforward_colimits(f: MonotoneMap, M: PosetModule) -> dict:
    """``{x: Colimit of M over {a : f(a) <= x}}`` for every ``x`` in the target."""
    P, Q = f.source, f.target
    return {x: Colimit(M, [a for a in P if Q.leq(f(a), x)]) for x in Q}


def pushforward_module(f: MonotoneMap, M: PosetModule, limits: dict | None = None) -> PosetModule:
    """Right Kan extension ``f_* M``: limits over the up-fibres of ``f``.

    Pass ``limits`` from :func:`pushforward_limits` to fix the bases used.
    """
    if f.source != M.poset:
        raise PosetMismatch("module does not live on the source of the map")
    lims = limits or pushforward_limits(f, M)
    Q = f.target
    dims = {x: lims[x].dim for x in Q}
    maps = {(x, y): lims[x].restriction_to(lims[y]) for x, y in Q.covers}
    return PosetModule(Q, M.field, dims, maps)


def pushforward_open_module(f: MonotoneMap, M: PosetModule, colimits: dict | None = None) -> PosetModule:
    """Left Kan extension ``f_† M``: colimits over the down-fibres of ``f``."""
    if f.source != M.poset:
        raise PosetMismatch("module does not live on the source of the map")
    colims = colimits or pushforward_colimits(f, M)
    Q = f.target
    dims = {x: colims[x].dim for x in Q}
    maps = {(x, y): colims[x].extension_to(colims[y]) for x, y in Q.covers}
    return PosetModule(Q, M.field, dims, maps)


@dataclass(frozen=True)
class NatSpace:
    dimension: int
    basis: tuple  # each member maps element -> Matrix


def _natural_constraints(M: PosetModule, N: PosetModule):
    p = M.poset
    off, total = {}, 0
    for a in p:
        off[a] = total
        total += N.dims[a] * M.dims[a]
    rows = []
    for a, b in p.covers:
        na, nb, ma, mb = N.dims[a], N.dims[b], M.dims[a], M.dims[b]
        if not nb or not ma:
            continue
        Nab, Mab = N.cover_maps[a, b].data, M.cover_maps[a, b].data
        for r in range(nb):
            for s in range(ma):
                row: dict = {}
                # N(a<=b) eta_a
                for k in range(na):
                    x = Nab[r][k]
                    if x:
                        i = off[a] + k * ma + s
                        row[i] = row.get(i, 0) + x
                # - eta_b M(a<=b)
                for k in range(mb):
                    x = Mab[k][s]
                    if x:
                        i = off[b] + r * mb + k
                        row[i] = row.get(i, 0) - x
                rows.append(row)
    return rows, off, total


def nat_space(M: PosetModule, N: PosetModule) -> NatSpace:
    """Natural transformations ``M -> N`` as the kernel of the naturality constraints."""
    if M.poset != N.poset:
        raise PosetMismatch("modules live on different posets")
    if M.field != N.field:
        raise FieldMismatch("modules live over different fields")
    rows, off, total = _natural_constraints(M, N)
    vecs = sparse_kernel(M.field, rows, total)
    basis = []
    for v in vecs:
        eta = {}
        for a in M.poset:
            na, ma = N.dims[a], M.dims[a]
            o = off[a]
            eta[a] = Matrix(M.field, na, ma, tuple(tuple(v[o + i * ma : o + (i + 1) * ma]) for i in range(na)))
        basis.append(eta)
    return NatSpace(len(basis), tuple(basis))


def is_natural(eta: Mapping, M: PosetModule, N: PosetModule) -> bool:
    return all(
        compose(N.cover_maps[a, b], eta[a]) == compose(eta[b], M.cover_maps[a, b]) for a, b in M.poset.covers
    )
