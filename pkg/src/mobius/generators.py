"""Deterministic test-universe generators: random posets and the fixed poset catalog.

All randomness goes through :class:`random.Random` instances seeded from
integers, so every object here is reproducible from its seed.
"""

from __future__ import annotations

import random

from .posets import MonotoneMap, Poset, poset_from_relations


def derive_seed(seed: int, *tags: int) -> int:
    """Mix ``seed`` with integer tags into a new 64-bit seed (splitmix64 finaliser)."""
    x = seed & 0xFFFFFFFFFFFFFFFF
    for t in tags:
        x = (x + 0x9E3779B97F4A7C15 + (t & 0xFFFFFFFFFFFFFFFF)) & 0xFFFFFFFFFFFFFFFF
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        x ^= x >> 31
    return x


def random_poset(rng: random.Random, max_size: int = 7, min_size: int = 1) -> Poset:
    """Random DAG on shuffled labels, closed transitively.

    The element list is shuffled so that input order is not a linear extension.
    """
    n = rng.randint(min_size, max_size)
    density = rng.choice((0.2, 0.35, 0.5, 0.7))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    labels = [f"e{i}" for i in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    return poset_from_relations([labels[i] for i in order], [(labels[i], labels[j]) for i, j in pairs])


def random_spread(rng: random.Random, p: Poset) -> set:
    """Convex hull of a random subset, so the result is always a spread."""
    picked = {a for a in p if rng.random() < 0.4}
    return {b for b in p if any(p.leq(a, b) for a in picked) and any(p.leq(b, c) for c in picked)}


def random_monotone_map(rng: random.Random, P: Poset, Q: Poset, attempts: int = 100) -> MonotoneMap:
    """Random monotone map built along a linear extension of ``P``.

    Values already chosen below an element may have no common upper bound in
    ``Q``; then the attempt restarts, and after ``attempts`` failures a
    constant map is returned.
    """
    for _ in range(attempts):
        values = {}
        for a in P.linear_extension:
            lower = [values[b] for b in P.down(a) if b != a]
            allowed = [y for y in Q if all(Q.leq(x, y) for x in lower)]
            if not allowed:
                break
            values[a] = rng.choice(allowed)
        else:
            return MonotoneMap(P, Q, values)
    y = rng.choice(Q.elements)
    return MonotoneMap(P, Q, {a: y for a in P})


def random_function(rng: random.Random, p: Poset, lo: int = -5, hi: int = 5) -> dict:
    return {a: rng.randint(lo, hi) for a in p}


def chain(n: int, prefix: str = "c") -> Poset:
    els = [f"{prefix}{i}" for i in range(n)]
    return poset_from_relations(els, list(zip(els, els[1:])))


def antichain(n: int, prefix: str = "x") -> Poset:
    return poset_from_relations([f"{prefix}{i}" for i in range(n)], [])


def diamond() -> Poset:
    return poset_from_relations(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")])


def boolean_lattice_2() -> Poset:
    els = ["{}", "{1}", "{2}", "{1,2}"]
    return poset_from_relations(els, [("{}", "{1}"), ("{}", "{2}"), ("{1}", "{1,2}"), ("{2}", "{1,2}")])


def zigzag4() -> Poset:
    return poset_from_relations(["z0", "z1", "z2", "z3"], [("z0", "z1"), ("z2", "z1"), ("z2", "z3")])


def catalog() -> dict:
    """The fixed family of small posets used for exhaustive Galois checks."""
    return {
        "chain1": chain(1),
        "chain2": chain(2),
        "chain3": chain(3),
        "chain4": chain(4),
        "antichain3": antichain(3),
        "diamond": diamond(),
        "B2": boolean_lattice_2(),
        "zigzag4": zigzag4(),
    }
