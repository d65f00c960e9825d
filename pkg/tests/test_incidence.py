import random

import pytest
from hypothesis import given, settings, strategies as st

from mobius.errors import PosetMismatch
from mobius.generators import chain, random_function, random_poset
from mobius.incidence import (
    GrFunction,
    convolve,
    identity_one,
    lower_inversion,
    mobius_hall,
    mobius_recursive,
    pullback_fn,
    pushforward_fn,
    upper_inversion,
    zeta,
)
from mobius.posets import MonotoneMap, interval, poset_from_relations


def test_zeta_and_one(chain2):
    z, one = zeta(chain2), identity_one(chain2)
    assert z["a", "b"] == z["a", "a"] == 1
    assert one["a", "a"] == 1 and one["a", "b"] == 0
    assert convolve(z, z)["a", "b"] == 2


def test_zeta_squared_counts_intervals(dia):
    zz = convolve(zeta(dia), zeta(dia))
    for (a, c), v in zz.values.items():
        assert v == len(interval(dia, a, c))


def test_mobius_examples(chain2, chain3, dia):
    assert mobius_recursive(chain2)["a", "b"] == -1
    assert mobius_recursive(dia)["0", "1"] == 1
    assert mobius_hall(chain3)["a", "c"] == 0
    assert mobius_hall(chain2)["a", "b"] == -1


def test_convolve_rejects_mixed_posets(chain2, chain3):
    with pytest.raises(PosetMismatch):
        convolve(zeta(chain2), zeta(chain3))


def test_inversion_examples(chain2):
    f = GrFunction(chain2, {"a": 1, "b": 1})
    assert upper_inversion(f).as_list() == [0, 1]
    assert lower_inversion(f).as_list() == [1, 0]
    zero = GrFunction(chain2, {"a": 0, "b": 0})
    assert upper_inversion(zero) == zero and lower_inversion(zero) == zero


def test_push_and_pull():
    c = chain(4)
    q = chain(2, prefix="q")
    f = MonotoneMap(c, q, {"c0": "q0", "c1": "q0", "c2": "q1", "c3": "q1"})
    m = GrFunction(c, {"c0": 1, "c1": 2, "c2": 3, "c3": 4})
    assert pushforward_fn(f, m).as_list() == [3, 7]
    n = GrFunction(q, {"q0": 5, "q1": -1})
    assert pullback_fn(f, n).as_list() == [5, 5, -1, -1]


def test_pullback_of_composite():
    c, q, r = chain(3), chain(2, "q"), chain(2, "r")
    f = MonotoneMap(c, q, {"c0": "q0", "c1": "q1", "c2": "q1"})
    g = MonotoneMap(q, r, {"q0": "r0", "q1": "r0"})
    n = GrFunction(r, {"r0": 4, "r1": 9})
    assert pullback_fn(f.then(g), n) == pullback_fn(f, pullback_fn(g, n))


def _triangular_solve(f: GrFunction) -> dict:
    """Independent oracle: solve sum_{b >= a} g(b) = f(a) top-down by back-substitution."""
    p = f.poset
    g = {}
    for a in reversed(p.linear_extension):
        g[a] = f[a] - sum(g[b] for b in p.up(a) if b != a)
    return g


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_inverse_law_and_uniqueness(seed):
    rng = random.Random(seed)
    p = random_poset(rng, max_size=7)
    mu = mobius_recursive(p)
    one = identity_one(p)
    assert convolve(zeta(p), mu) == one
    assert convolve(mu, zeta(p)) == one
    f = GrFunction(p, random_function(rng, p))
    assert upper_inversion(f).values == _triangular_solve(f)


def test_hall_counts_by_hand():
    # Brute force Hall: count chains a = x0 < ... < xk = b with explicit tuples.
    from itertools import permutations

    p = poset_from_relations(list("abcde"), [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "e"), ("e", "d")])
    mu = mobius_recursive(p)
    inner = ["b", "c", "e"]
    total = 0
    for k in range(0, len(inner) + 1):
        for mid in permutations(inner, k):
            seq = ("a",) + mid + ("d",)
            if all(p.lt(x, y) for x, y in zip(seq, seq[1:])):
                total += (-1) ** (k + 1)
    assert mu["a", "d"] == total == 2
    assert mobius_hall(p) == mu
