"""Galois connections between finite posets and the Rota-type identity checks.

Every check returns a :class:`~mobius.report.Report` whose items pair the two
sides of an identity, so failures carry both values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .cohomology import hom_complex, mobius_cohomology
from .errors import NotAConnection, NotASpread, PosetMismatch, SizeCap
from .incidence import GrFunction, mobius_recursive, pullback_fn, pushforward_fn, upper_inversion
from .linalg import rank
from .modules import (
    PosetModule,
    dimension_function,
    indicator,
    is_natural,
    nat_space,
    pullback_module,
    pushforward_colimits,
    pushforward_limits,
    pushforward_module,
    pushforward_open_module,
)
from .posets import MonotoneMap, Poset, is_spread
from .report import Report

ENUMERATION_CAP = 6


def verify_connection(f: MonotoneMap, g: MonotoneMap) -> tuple:
    """``(True, None)`` or ``(False, (a, x))`` where ``f(a) <= x`` and ``a <= g(x)`` disagree."""
    if f.source != g.target or f.target != g.source:
        raise PosetMismatch("f and g must run in opposite directions between the same posets")
    P, Q = f.source, f.target
    for a in P:
        for x in Q:
            if Q.leq(f(a), x) != P.leq(a, g(x)):
                return False, (a, x)
    return True, None


@dataclass(frozen=True)
class GaloisConnection:
    """Adjoint pair ``f : P <-> Q : g`` with ``f(a) <= x  iff  a <= g(x)``."""

    f: MonotoneMap
    g: MonotoneMap

    def __post_init__(self):
        ok, witness = verify_connection(self.f, self.g)
        if not ok:
            a, x = witness
            raise NotAConnection(f"adjointness fails at a={a!r}, x={x!r}")

    @property
    def P(self) -> Poset:
        return self.f.source

    @property
    def Q(self) -> Poset:
        return self.f.target

    @classmethod
    def identity(cls, p: Poset) -> "GaloisConnection":
        ident = MonotoneMap.identity(p)
        return cls(ident, ident)


def monotone_maps(P: Poset, Q: Poset) -> Iterator[MonotoneMap]:
    """All monotone maps ``P -> Q``: digit vectors over ``Q``, pruned as they grow."""
    els = P.elements
    n = len(els)
    targets = Q.elements
    rel = P.relation
    # earlier[i]: (j, j <= i) for every earlier j comparable with i
    earlier = [[(j, rel[j][i]) for j in range(i) if rel[j][i] or rel[i][j]] for i in range(n)]
    values: list = [None] * n

    def extend(i):
        if i == n:
            yield MonotoneMap(P, Q, dict(zip(els, values)))
            return
        for y in targets:
            ok = True
            for j, below in earlier[i]:
                if not (Q.leq(values[j], y) if below else Q.leq(y, values[j])):
                    ok = False
                    break
            if ok:
                values[i] = y
                yield from extend(i + 1)

    yield from extend(0)


def enumerate_connections(P: Poset, Q: Poset, max_size: int = ENUMERATION_CAP) -> list:
    """Every Galois connection ``P <-> Q``, ordered by the enumeration of ``f``."""
    if len(P) > max_size or len(Q) > max_size:
        raise SizeCap(f"enumeration is capped at {max_size} elements per poset")
    out = []
    for f in monotone_maps(P, Q):
        candidates = [
            [b for b in P if all(Q.leq(f(a), x) == P.leq(a, b) for a in P)] for x in Q
        ]
        for choice in product(*candidates):
            values = dict(zip(Q.elements, choice))
            try:
                g = MonotoneMap(Q, P, values)
            except ValueError:
                continue
            out.append(GaloisConnection(f, g))
    return out


def check_functor_equalities(c: GaloisConnection, N: PosetModule, M: PosetModule) -> Report:
    """``f^* N = g_* N`` and ``f_† M = g^* M`` through the canonical comparison maps.

    ``N`` lives on ``Q`` and ``M`` on ``P``.  For the first equality the
    comparison at ``a`` projects the limit defining ``g_* N(a)`` onto its
    ``f(a)`` component; for the second it includes ``M(g(x))`` into the colimit
    defining ``f_† M(x)``.
    """
    f, g = c.f, c.g
    report = Report("functor-equalities")

    pulled = pullback_module(f, N)
    lims = pushforward_limits(g, N)
    pushed = pushforward_module(g, N, lims)
    comparison = {a: lims[a].projection(f(a)) for a in c.P}
    for a in c.P:
        report.add(f"f*N=g_*N dim @{a}", pulled.dims[a], pushed.dims[a])
        report.add(f"f*N=g_*N comparison rank @{a}", rank(comparison[a]), pushed.dims[a])
    report.add("f*N=g_*N comparison natural", is_natural(comparison, pushed, pulled), True)

    pulled = pullback_module(g, M)
    colims = pushforward_colimits(f, M)
    pushed = pushforward_open_module(f, M, colims)
    comparison = {x: colims[x].injection(g(x)) for x in c.Q}
    for x in c.Q:
        report.add(f"f_+M=g*M dim @{x}", pushed.dims[x], pulled.dims[x])
        report.add(f"f_+M=g*M comparison rank @{x}", rank(comparison[x]), pulled.dims[x])
    report.add("f_+M=g*M comparison natural", is_natural(comparison, pulled, pushed), True)
    return report


def rota_classical_check(c: GaloisConnection) -> Report:
    """``sum_{g(x)=a} mu_Q(x, y) = sum_{f(b)=y} mu_P(a, b)`` for all ``a``, ``y``.

    Off-interval Möbius values count as zero.
    """
    muP, muQ = mobius_recursive(c.P).values, mobius_recursive(c.Q).values
    report = Report("rota-classical")
    for a in c.P:
        for y in c.Q:
            lhs = sum(muQ.get((x, y), 0) for x in c.g.fiber(a))
            rhs = sum(muP.get((a, b), 0) for b in c.f.fiber(y))
            report.add(f"a={a} y={y}", lhs, rhs)
    return report


def rota_inversion_check(c: GaloisConnection, n: GrFunction) -> Report:
    """``upper inversion on P of f^# n`` against ``g_# of the upper inversion on Q of n``."""
    lhs = upper_inversion(pullback_fn(c.f, n))
    rhs = pushforward_fn(c.g, upper_inversion(n))
    report = Report("rota-inversion")
    for a in c.P:
        report.add(str(a), lhs[a], rhs[a])
    return report


def rota_ext_check(c: GaloisConnection, N: PosetModule, a) -> Report:
    """Four-way Euler identity at ``a`` plus degreewise Ext dimension equality."""
    f, g = c.f, c.g
    Q = c.Q
    n = dimension_function(N)
    Z = set(g.fiber(a))
    if not is_spread(Q, Z):
        raise NotASpread(f"g^-1({a!r}) = {Q.sort(Z)!r} is not a spread")

    inv_pulled = upper_inversion(pullback_fn(f, n))[a]
    left = mobius_cohomology(a, pullback_module(f, N))
    right = hom_complex(Z, N).cohomology()
    pushed_inv = pushforward_fn(g, upper_inversion(n))[a]

    report = Report("rota-ext")
    report.add(f"@{a} d_P(f#n) = chi(1_a, f*N)", inv_pulled, left.euler)
    report.add(f"@{a} chi(1_a, f*N) = chi(g*1_a, N)", left.euler, right.euler)
    report.add(f"@{a} chi(g*1_a, N) = g#(d_Q n)", right.euler, pushed_inv)
    length = max(len(left.betti), len(right.betti))
    report.add(f"@{a} Ext^*(1_a, f*N) = Ext^*(g*1_a, N)", list(left.padded(length)), list(right.padded(length)))
    g_star = pullback_module(g, indicator(c.P, {a}, N.field))
    one_Z = indicator(Q, Z, N.field)
    report.add(f"@{a} g*1_a = 1_Z", [g_star.dims[x] for x in Q], [one_Z.dims[x] for x in Q])
    return report


def adjunction_dim_check(f: MonotoneMap, M: PosetModule, N: PosetModule) -> Report:
    """Dimension forms of ``f_† -| f^*`` and ``f^* -| f_*`` (``M`` on source, ``N`` on target)."""
    if M.poset != f.source or N.poset != f.target:
        raise PosetMismatch("M must live on the source of f and N on its target")
    report = Report("adjunctions")
    pulled = pullback_module(f, N)
    report.add(
        "dim Nat(f_+M, N) = dim Nat(M, f*N)",
        nat_space(pushforward_open_module(f, M), N).dimension,
        nat_space(M, pulled).dimension,
    )
    report.add(
        "dim Nat(f*N, M) = dim Nat(N, f_*M)",
        nat_space(pulled, M).dimension,
        nat_space(N, pushforward_module(f, M)).dimension,
    )
    return report
