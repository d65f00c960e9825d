"""Standard cofree resolution, Hom complexes for spreads, Möbius (co)homology.

Ext groups ``Ext^d(1_Z, N)`` are computed from the cochain complex obtained by
applying ``Hom(1_Z, -)`` to the standard cofree resolution of ``N``.  In degree
``d`` that complex has one block ``N(max s)`` per chain ``s`` of dimension
``d`` with ``min s`` in ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotAComplex, NotASpread
from .incidence import upper_inversion
from .linalg import FieldSpec, Matrix, block_matrix, compose, rank
from .modules import PosetModule, dimension_function, direct_sum, principal_cofree
from .posets import chains_with_max, chains_with_min_in, is_spread
from .report import Report


@dataclass(frozen=True)
class CohomologyResult:
    betti: tuple
    euler: int

    @classmethod
    def from_betti(cls, betti) -> "CohomologyResult":
        betti = tuple(betti)
        return cls(betti, sum((-1) ** d * b for d, b in enumerate(betti)))

    def padded(self, length: int) -> tuple:
        return self.betti + (0,) * (length - len(self.betti))


@dataclass(frozen=True)
class CochainComplex:
    """``C^0 -> C^1 -> ... -> C^D``; ``deltas[d]`` maps degree ``d`` to ``d + 1``."""

    field: FieldSpec
    dims: tuple
    deltas: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.deltas) != max(len(self.dims) - 1, 0):
            raise ValueError("need one coboundary between each pair of consecutive degrees")
        for d, m in enumerate(self.deltas):
            if m.shape != (self.dims[d + 1], self.dims[d]):
                raise ValueError(f"coboundary {d} has shape {m.shape}")

    def compositions_vanish(self) -> bool:
        return all(
            compose(self.deltas[d + 1], self.deltas[d]).is_zero() for d in range(len(self.deltas) - 1)
        )

    def check(self) -> None:
        for d in range(len(self.deltas) - 1):
            if not compose(self.deltas[d + 1], self.deltas[d]).is_zero():
                raise NotAComplex(f"coboundaries {d} and {d + 1} do not compose to zero")

    def betti(self) -> tuple:
        self.check()
        ranks = [rank(m) for m in self.deltas]
        out = []
        for d, n in enumerate(self.dims):
            r_out = ranks[d] if d < len(ranks) else 0
            r_in = ranks[d - 1] if d > 0 else 0
            out.append(n - r_out - r_in)
        return tuple(out)

    def cohomology(self) -> CohomologyResult:
        return CohomologyResult.from_betti(self.betti())

    def euler_of_cochains(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.dims))


def _delete(chain: tuple, i: int) -> tuple:
    return chain[:i] + chain[i + 1 :]


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


def hom_complex(Z: Iterable, N: PosetModule) -> CochainComplex:
    """The complex ``Hom(1_Z, F^* N)`` of the standard cofree resolution."""
    p, field = N.poset, N.field
    Z = set(Z)
    if not is_spread(p, Z):
        raise NotASpread(f"{p.sort(Z)!r} is not a spread")
    chains = []
    d = 0
    while True:
        cs = chains_with_min_in(p, Z, d)
        if not cs:
            break
        chains.append(cs)
        d += 1
    sizes = [[N.dims[s[-1]] for s in cs] for cs in chains]
    deltas = []
    for d in range(len(chains) - 1):
        pos = {s: k for k, s in enumerate(chains[d])}
        blocks = {}
        for row, tau in enumerate(chains[d + 1]):
            for i in range(len(tau)):
                sigma = _delete(tau, i)
                col = pos.get(sigma)
                if col is None:  # min sigma left Z
                    continue
                blocks[row, col] = N.map(sigma[-1], tau[-1]).scale(_sign(i))
        deltas.append(block_matrix(field, sizes[d + 1], sizes[d], blocks))
    return CochainComplex(field, tuple(sum(s) for s in sizes), tuple(deltas), tuple(map(tuple, chains)))


def mobius_cohomology(a, N: PosetModule) -> CohomologyResult:
    """Dimensions of ``Ext^d(1_a, N)`` and their alternating sum."""
    return hom_complex({a}, N).cohomology()


def euler_characteristic(Z: Iterable, N: PosetModule) -> int:
    return hom_complex(Z, N).cohomology().euler


def euler_chain_sum(Z: Iterable, N: PosetModule) -> int:
    """``sum_d (-1)^d sum_{dim s = d, min s in Z} dim N(max s)``, straight from the chains."""
    p = N.poset
    Z = set(Z)
    if not is_spread(p, Z):
        raise NotASpread(f"{p.sort(Z)!r} is not a spread")
    total = 0
    for d in range(p.height + 1):
        total += (-1) ** d * sum(N.dims[s[-1]] for s in chains_with_min_in(p, Z, d))
    return total


def homology_complex(a, N: PosetModule) -> CochainComplex:
    """Linear dual of the Möbius homology chain complex at ``a``.

    Degree ``d`` has one block ``N(min s)`` per chain ``s`` of dimension ``d``
    ending at ``a``; the boundary drops any vertex but the last.  Transposing
    the boundaries gives a cochain complex with the same (co)homology
    dimensions.
    """
    p, field = N.poset, N.field
    chains = []
    d = 0
    while True:
        cs = chains_with_max(p, a, d)
        if not cs:
            break
        chains.append(cs)
        d += 1
    sizes = [[N.dims[s[0]] for s in cs] for cs in chains]
    deltas = []
    for d in range(len(chains) - 1):
        pos = {s: k for k, s in enumerate(chains[d])}
        blocks = {}
        for col, tau in enumerate(chains[d + 1]):
            for i in range(len(tau) - 1):
                sigma = _delete(tau, i)
                blocks[pos[sigma], col] = N.map(tau[0], sigma[0]).scale(_sign(i))
        boundary = block_matrix(field, sizes[d], sizes[d + 1], blocks)
        deltas.append(boundary.T)
    return CochainComplex(field, tuple(sum(s) for s in sizes), tuple(deltas), tuple(map(tuple, chains)))


def mobius_homology(a, N: PosetModule) -> CohomologyResult:
    return homology_complex(a, N).cohomology()


@dataclass(frozen=True)
class StandardResolution:
    """``0 -> N -> F^0 N -> F^1 N -> ...`` evaluated pointwise.

    ``components[a][d]`` lists the chains ``s`` of dimension ``d`` with
    ``a <= min s``, in the coordinate order of ``deltas[d][a]``.
    """

    module: PosetModule
    cofree: tuple  # F^d N as PosetModules
    epsilon: dict  # element -> Matrix N(a) -> F^0 N(a)
    deltas: tuple  # d -> {element -> Matrix F^d N(a) -> F^{d+1} N(a)}
    components: dict


def standard_resolution(N: PosetModule) -> StandardResolution:
    p, field = N.poset, N.field
    top = p.height
    all_chains = [chains_with_min_in(p, p.elements, d) for d in range(top + 1)]
    cofree = tuple(
        direct_sum([principal_cofree(p, s[0], N.dims[s[-1]], field) for s in cs]) for cs in all_chains
    )
    components = {a: [[s for s in cs if p.leq(a, s[0])] for cs in all_chains] for a in p}
    epsilon = {}
    for a in p:
        comps = components[a][0] if all_chains else []
        blocks = {(k, 0): N.map(a, s[0]) for k, s in enumerate(comps)}
        epsilon[a] = block_matrix(field, [N.dims[s[0]] for s in comps], [N.dims[a]], blocks)
    deltas = []
    for d in range(top):
        at = {}
        for a in p:
            src, dst = components[a][d], components[a][d + 1]
            pos = {s: k for k, s in enumerate(src)}
            blocks = {}
            for row, tau in enumerate(dst):
                for i in range(len(tau)):
                    sigma = _delete(tau, i)
                    blocks[row, pos[sigma]] = N.map(sigma[-1], tau[-1]).scale(_sign(i))
            at[a] = block_matrix(field, [N.dims[s[-1]] for s in dst], [N.dims[s[-1]] for s in src], blocks)
        deltas.append(at)
    return StandardResolution(N, cofree, epsilon, tuple(deltas), components)


@dataclass(frozen=True)
class ExactnessResult:
    exact: bool
    failure: tuple | None = None  # (element, degree); degree -1 means N -> F^0 N is not injective

    def __bool__(self):
        return self.exact


def check_resolution_exact(N: PosetModule, resolution: StandardResolution | None = None) -> ExactnessResult:
    res = resolution or standard_resolution(N)
    field = N.field
    for a in N.poset:
        maps = [res.epsilon[a]] + [res.deltas[d][a] for d in range(len(res.deltas))]
        if rank(maps[0]) != N.dims[a]:
            return ExactnessResult(False, (a, -1))
        for d in range(len(maps)):
            m_in = maps[d]
            m_out = maps[d + 1] if d + 1 < len(maps) else Matrix.zeros(field, 0, m_in.rows)
            if not compose(m_out, m_in).is_zero():
                return ExactnessResult(False, (a, d))
            if m_out.cols - rank(m_out) != rank(m_in):
                return ExactnessResult(False, (a, d))
    return ExactnessResult(True)


def euler_check(N: PosetModule) -> Report:
    """Möbius inversion of the dimension function against the Euler characteristic."""
    inv = upper_inversion(dimension_function(N))
    report = Report("euler-check")
    for a in N.poset:
        report.add(str(a), inv[a], mobius_cohomology(a, N).euler)
    return report
