import random

import pytest
from hypothesis import given, settings, strategies as st

from mobius.errors import FunctorialityError, NotASpread, NotComparable
from mobius.generators import random_monotone_map, random_poset, random_spread
from mobius.linalg import QQ, FieldSpec, Matrix, rank
from mobius.modules import (
    PosetModule,
    check_functoriality,
    constant_module,
    dimension_function,
    direct_sum,
    indicator,
    is_natural,
    nat_space,
    principal_cofree,
    pullback_module,
    pushforward_module,
    pushforward_open_module,
    random_module,
    zero_module,
)
from mobius.posets import MonotoneMap, poset_from_relations

ONE = Matrix.from_rows(QQ, [[1]])


def non_commuting_diamond(dia, validate=True):
    maps = {("0", "x"): ONE, ("0", "y"): ONE, ("x", "1"): ONE, ("y", "1"): ONE.scale(2)}
    return PosetModule(dia, QQ, {a: 1 for a in dia}, maps, validate=validate)


def test_functoriality_violation_is_named(dia):
    with pytest.raises(FunctorialityError, match="'0'.*'1'"):
        non_commuting_diamond(dia)
    assert check_functoriality(non_commuting_diamond(dia, validate=False)) == (False, ("0", "1"))


def test_derived_maps(chain3, dia):
    M = constant_module(chain3, 2)
    assert M.map("a", "a") == Matrix.identity(QQ, 2)
    assert M.map("a", "c") == Matrix.identity(QQ, 2)
    assert check_functoriality(constant_module(dia, 1)) == (True, None)
    with pytest.raises(NotComparable):
        M.map("c", "a")


def test_constructors(chain3):
    assert constant_module(chain3, 0).is_zero()
    top = principal_cofree(chain3, "c", 1)
    assert top == constant_module(chain3, 1)
    bottom = principal_cofree(chain3, "a", 2)
    assert bottom.dims == {"a": 2, "b": 0, "c": 0}
    assert dimension_function(principal_cofree(chain3, "b", 2)).as_list() == [2, 2, 0]
    assert indicator(chain3, chain3.elements) == constant_module(chain3, 1)
    assert indicator(chain3, {"b"}).dims == {"a": 0, "b": 1, "c": 0}
    with pytest.raises(NotASpread):
        indicator(chain3, {"a", "c"})


def test_random_module_determinism(chain3):
    assert random_module(chain3, seed=5) == random_module(chain3, seed=5)
    assert random_module(chain3, max_dim=0, seed=1).is_zero()


def test_nat_examples(dia):
    assert nat_space(constant_module(dia, 1), constant_module(dia, 1)).dimension == 1
    assert nat_space(constant_module(dia, 2), zero_module(dia)).dimension == 0
    two = poset_from_relations(["p", "q"], [])
    assert nat_space(constant_module(two, 1), constant_module(two, 1)).dimension == 2


def test_identity_and_constant_maps(chain3, dia):
    N = random_module(dia, seed=3)
    ident = MonotoneMap.identity(dia)
    assert pullback_module(ident, N) == N
    assert pushforward_module(ident, N).dims == N.dims
    assert pushforward_open_module(ident, N).dims == N.dims
    const = MonotoneMap(chain3, dia, {a: "x" for a in chain3})
    assert pullback_module(const, N).dims == {a: N.dims["x"] for a in chain3}


def test_empty_fibres_give_zero(chain3):
    q = poset_from_relations(["u", "v", "w"], [("u", "v"), ("v", "w")])
    f = MonotoneMap(chain3, q, {"a": "u", "b": "u", "c": "u"})
    M = constant_module(chain3, 1)
    # the limit fibre above v is empty, the colimit fibre below v is everything
    assert pushforward_module(f, M).dims == {"u": 1, "v": 0, "w": 0}
    assert pushforward_open_module(f, M).dims == {"u": 1, "v": 1, "w": 1}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([QQ, FieldSpec.prime(7)]))
def test_random_modules_are_functorial(seed, field):
    rng = random.Random(seed)
    p = random_poset(rng, max_size=7)
    M = random_module(p, field, max_dim=4, seed=seed)
    assert check_functoriality(M) == (True, None)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_nat_into_cofree(seed):
    rng = random.Random(seed)
    p = random_poset(rng, max_size=5)
    M = random_module(p, max_dim=3, seed=seed)
    d = {a: rng.randint(0, 2) for a in p}
    N = direct_sum([principal_cofree(p, a, d[a]) for a in p])
    assert nat_space(M, N).dimension == sum(d[a] * M.dims[a] for a in p)
    Z = random_spread(rng, p)
    assert nat_space(indicator(p, Z), N).dimension == sum(d[a] for a in Z)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_nat_basis_is_natural_and_independent(seed):
    rng = random.Random(seed)
    p = random_poset(rng, max_size=5)
    M, N = random_module(p, seed=seed), random_module(p, seed=seed + 1)
    space = nat_space(M, N)
    for eta in space.basis:
        assert is_natural(eta, M, N)
    flat = [[x for a in p for row in eta[a].tolist() for x in row] for eta in space.basis]
    if flat and flat[0]:
        assert rank(Matrix.from_rows(QQ, flat)) == space.dimension


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_pushforward_pullback_functorial(seed):
    rng = random.Random(seed)
    P, Q = random_poset(rng, max_size=5), random_poset(rng, max_size=5)
    f = random_monotone_map(rng, P, Q)
    M, N = random_module(P, seed=seed), random_module(Q, seed=seed + 7)
    for X in (pullback_module(f, N), pushforward_module(f, M), pushforward_open_module(f, M)):
        assert check_functoriality(X)[0]
