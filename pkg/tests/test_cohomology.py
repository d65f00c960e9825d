import random

import pytest
from hypothesis import given, settings, strategies as st

from mobius.cohomology import (
    CochainComplex,
    check_resolution_exact,
    euler_chain_sum,
    euler_characteristic,
    euler_check,
    hom_complex,
    mobius_cohomology,
    mobius_homology,
    standard_resolution,
)
from mobius.errors import NotAComplex, NotASpread
from mobius.generators import random_poset
from mobius.incidence import lower_inversion
from mobius.linalg import QQ, Matrix
from mobius.modules import constant_module, dimension_function, principal_cofree, random_module, zero_module


def test_chain_of_two_examples(chain2):
    N = constant_module(chain2, 1)
    C = hom_complex({"a"}, N)
    assert C.dims == (1, 1)
    assert C.deltas[0].tolist() in ([[1]], [[-1]])
    at_a, at_b = mobius_cohomology("a", N), mobius_cohomology("b", N)
    assert (at_a.betti, at_a.euler) == ((0, 0), 0)
    assert (at_b.betti, at_b.euler) == ((1,), 1)
    assert mobius_homology("b", N).betti == (0, 0)
    assert euler_characteristic({"a"}, N) == 0
    assert [i.lhs for i in euler_check(N).items] == [0, 1]
    assert euler_check(N).ok


def test_zero_module(dia):
    Z = zero_module(dia)
    assert all(d == 0 for d in hom_complex({"0"}, Z).dims)
    assert euler_characteristic({"x", "y"}, Z) == 0
    assert all(i.lhs == i.rhs == 0 for i in euler_check(Z).items)
    assert check_resolution_exact(Z)


def test_cofree_concentrated_in_degree_zero(dia):
    for a in dia:
        N = principal_cofree(dia, a, 2)
        for b in dia:
            res = mobius_cohomology(b, N)
            assert res.betti[1:] == (0,) * (len(res.betti) - 1)
            assert res.euler == (2 if b == a else 0)


def test_not_a_spread(chain3):
    with pytest.raises(NotASpread):
        hom_complex({"a", "c"}, constant_module(chain3, 1))


def test_non_complex_rejected():
    one = Matrix.from_rows(QQ, [[1]])
    C = CochainComplex(QQ, (1, 1, 1), (one, one))
    assert not C.compositions_vanish()
    with pytest.raises(NotAComplex):
        C.betti()


def test_corrupted_resolution_detected(dia):
    N = constant_module(dia, 1)
    res = standard_resolution(N)
    a = "0"
    bad = dict(res.deltas[0])
    bad[a] = bad[a].scale(0)
    corrupted = type(res)(res.module, res.cofree, res.epsilon, (bad,) + res.deltas[1:], res.components)
    result = check_resolution_exact(N, corrupted)
    assert not result.exact and result.failure[0] == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_euler_poincare(seed):
    rng = random.Random(seed)
    p = random_poset(rng, max_size=6)
    N = random_module(p, max_dim=3, seed=seed)
    for a in p:
        C = hom_complex({a}, N)
        assert C.cohomology().euler == C.euler_of_cochains()
        assert mobius_homology(a, N).euler == lower_inversion(dimension_function(N))[a]
        assert euler_chain_sum({a}, N) == C.euler_of_cochains()
