"""Seeded random-property battery behind ``mobius selftest``.

Trial ``i`` draws everything from ``random.Random(derive_seed(seed, i))``, so
a trial can be replayed on its own and the merged report does not depend on
how trials are scheduled across workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

from .cohomology import (
    check_resolution_exact,
    euler_chain_sum,
    euler_characteristic,
    euler_check,
    hom_complex,
)
from .galois import (
    adjunction_dim_check,
    check_functor_equalities,
    enumerate_connections,
    rota_classical_check,
    rota_ext_check,
    rota_inversion_check,
)
from .generators import (
    catalog,
    derive_seed,
    random_function,
    random_monotone_map,
    random_poset,
    random_spread,
)
from .incidence import GrFunction, lower_inversion, mobius_hall, mobius_recursive, upper_inversion
from .linalg import QQ, FieldSpec
from .modules import indicator, nat_space, random_module
from .report import Report

DEFAULT_SEED = 42
DEFAULT_TRIALS = 200

GF7 = FieldSpec.prime(7)


def _catalog_pairs() -> list:
    cat = list(catalog().items())
    return [(pn, P, qn, Q) for pn, P in cat for qn, Q in cat]


def run_trial(seed: int, i: int) -> dict:
    """``{check: (passed, total, [failure labels])}`` for trial ``i``."""
    rng = random.Random(derive_seed(seed, i))
    tally: dict = {}

    def record(check: str, ok: bool, where: str) -> None:
        passed, total, bad = tally.get(check, (0, 0, []))
        tally[check] = (passed + bool(ok), total + 1, bad if ok else bad + [f"trial {i}: {where}"])

    p = random_poset(rng, max_size=8)
    record("mobius-oracle", mobius_recursive(p) == mobius_hall(p), f"poset {p.elements}")

    f = GrFunction(p, random_function(rng, p))
    up, low = upper_inversion(f), lower_inversion(f)
    record("inversion-upper", all(sum(up[b] for b in p.up(a)) == f[a] for a in p), "upper")
    record("inversion-lower", all(sum(low[b] for b in p.down(a)) == f[a] for a in p), "lower")

    p = random_poset(rng, max_size=7)
    for field in (QQ, GF7):
        N = random_module(p, field, max_dim=4, seed=rng.getrandbits(64))
        for item in euler_check(N).items:
            record(f"euler-check {field}", item.equal, f"@{item.label}")
        a = rng.choice(p.elements)
        C = hom_complex({a}, N)
        record("complex-law", C.compositions_vanish(), f"@{a} {field}")
        record(
            "h0-equals-hom",
            C.betti()[0] == nat_space(indicator(p, {a}, field), N).dimension,
            f"@{a} {field}",
        )
        Z = random_spread(rng, p)
        record("euler-indicator", euler_chain_sum(Z, N) == euler_characteristic(Z, N), f"Z={p.sort(Z)}")

    p = random_poset(rng, max_size=5)
    N = random_module(p, QQ, max_dim=3, seed=rng.getrandbits(64))
    res = check_resolution_exact(N)
    record("resolution-check", res.exact, f"failure {res.failure}")

    P, Q = random_poset(rng, max_size=5), random_poset(rng, max_size=5)
    fmap = random_monotone_map(rng, P, Q)
    M = random_module(P, QQ, max_dim=3, seed=rng.getrandbits(64))
    N = random_module(Q, QQ, max_dim=3, seed=rng.getrandbits(64))
    record("adjunctions", adjunction_dim_check(fmap, M, N).ok, f"f={fmap.values}")

    pairs = _catalog_pairs()
    pn, P, qn, Q = pairs[i % len(pairs)]
    for k, c in enumerate(enumerate_connections(P, Q)):
        where = f"{pn}->{qn} #{k}"
        record("rota-classical", rota_classical_check(c).ok, where)
        n = GrFunction(Q, random_function(rng, Q))
        record("rota-inversion", rota_inversion_check(c, n).ok, where)
        N = random_module(Q, QQ, max_dim=3, seed=rng.getrandbits(64))
        M = random_module(P, QQ, max_dim=3, seed=rng.getrandbits(64))
        for a in P:
            record("rota-ext", rota_ext_check(c, N, a).ok, f"{where} @{a}")
        record("functor-equalities", check_functor_equalities(c, N, M).ok, where)
    return tally


def _run_trial_args(args):
    return run_trial(*args)


def selftest(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS, jobs: int = 1) -> Report:
    """Aggregate report: one item per check kind, ``lhs`` passed against ``rhs`` run."""
    work = [(seed, i) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_args, work, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [run_trial(*w) for w in work]

    merged: dict = {}
    for tally in results:
        for check, (passed, total, bad) in tally.items():
            mp, mt, mb = merged.get(check, (0, 0, []))
            merged[check] = (mp + passed, mt + total, mb + bad)

    report = Report(f"selftest seed={seed} trials={trials}")
    for check in sorted(merged):
        passed, total, bad = merged[check]
        report.add(check, passed, total)
        for label in bad[:5]:
            report.add(f"{check} failed {label}", False, True)
    return report
