from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhres import InvalidSystemError, validate_system
from mhres.combinatorics import (bott_dim, critical_degree, knp_support, pk_above, pk_below,
                                 pk_interval, q_of, resultant_degrees, sum_set)

from oracles import kunneth_terms
from strategies import systems, vectors_for


class TestValidate:
    def test_derived_sizes(self, bilinear_scaled, plane_conics):
        assert (bilinear_scaled.n, bilinear_scaled.r) == (2, 2)
        assert (plane_conics.n, plane_conics.r) == (2, 1)

    @pytest.mark.parametrize("l,d,s,needle", [
        ((1, 1), (1, 1), (2, 2, 2), "gcd"),
        ((1, 1), (1, 1), (2, 1, 1), "sorted"),
        ((1, 1), (1, 1), (1, 1), "len(s)"),
        ((1, 0), (1, 1), (1, 1), "group sizes"),
        ((1,), (0,), (1, 1), "base degrees"),
        ((1,), (1,), (0, 1), "scale factors"),
        ((1, 1), (1,), (1, 1, 1), "len(d)"),
    ])
    def test_rejections_are_distinct(self, l, d, s, needle):
        with pytest.raises(InvalidSystemError, match=needle.replace("(", r"\(").replace(")", r"\)")):
            validate_system(l, d, s)


def test_critical_degree(bilinear_scaled, plane_conics):
    assert critical_degree(bilinear_scaled) == (2, 2)
    assert critical_degree(plane_conics) == (3,)
    assert critical_degree(validate_system((1,), (1,), (1, 1))) == (0,)


@pytest.mark.parametrize("l,a,expected", [
    (1, 3, (0, 4)), (1, -3, (1, 2)), (2, -4, (2, 3)), (1, -1, (None, 0)),
])
def test_bott_examples(l, a, expected):
    assert bott_dim(l, a) == expected


@given(st.integers(1, 5), st.integers(-12, 12))
def test_bott_exactly_one_branch(l, a):
    q, dim = bott_dim(l, a)
    assert dim >= 0
    assert (q is None) == (dim == 0) == (-l <= a < 0)


def test_sum_sets(bilinear_scaled, plane_conics):
    assert sum_set(bilinear_scaled, 2) == [2, 3]
    assert sum_set(bilinear_scaled, 0) == [0]
    assert sum_set(plane_conics, 2) == [2]
    with pytest.raises(ValueError):
        sum_set(bilinear_scaled, 4)


@given(systems(), st.data())
def test_sum_set_size_bounds(sys, data):
    p = data.draw(st.integers(0, sys.n + 1))
    assert 1 <= len(sum_set(sys, p)) <= comb(sys.n + 1, p)
    if set(sys.s) == {1}:
        assert sum_set(sys, p) == [p]


def test_pk_intervals(bilinear_scaled):
    assert pk_interval(bilinear_scaled, (2, 0), 1) == [3]
    assert pk_interval(bilinear_scaled, (2, 0), 2) == [1]
    assert pk_interval(validate_system((1,), (2,), (1, 1)), (0,), 1) == []


@given(systems(), st.data())
def test_pk_predicates_agree_with_set(sys, data):
    m = data.draw(vectors_for(sys))
    z = data.draw(st.integers(-6, 12))
    for k in range(1, sys.r + 1):
        pk = pk_interval(sys, m, k)
        lk, dk = sys.l[k - 1], sys.d[k - 1]
        assert len(pk) <= -(-lk // dk) <= lk
        if pk:
            assert pk_below(sys, m, k, z) == (max(pk) < z)
            assert pk_above(sys, m, k, z) == (min(pk) > z)
        assert not (pk_below(sys, m, k, z) and pk_above(sys, m, k, z))


def test_q_of(bilinear_scaled):
    assert q_of(bilinear_scaled, (2, 0), 2) == 1
    assert q_of(bilinear_scaled, (2, 0), 4) == 2
    assert q_of(bilinear_scaled, (2, 0), -10) == 0


def test_knp_support_examples(bilinear_scaled):
    assert knp_support(bilinear_scaled, (2, 0), 3) == [(4, 1, 3, 1)]
    assert knp_support(bilinear_scaled, (2, 0), 2) == [(2, 1, 1, 1)]
    assert knp_support(bilinear_scaled, (2, 0), 0) == [(0, 0, 3, 1)]


@settings(max_examples=60)
@given(systems(), st.data())
def test_knp_support_matches_brute_force(sys, data):
    m = data.draw(vectors_for(sys))
    got = {}
    for p in range(sys.n + 2):
        for z, nu, dim, mult in knp_support(sys, m, p):
            assert dim > 0
            got[nu, p] = got.get((nu, p), 0) + dim * mult
    assert got == kunneth_terms(sys, m)


def test_resultant_degrees(bilinear_scaled, plane_conics):
    assert resultant_degrees(bilinear_scaled) == ((4, 4, 2), 10)
    assert resultant_degrees(validate_system((1,), (1,), (1, 1))) == ((1, 1), 2)
    assert resultant_degrees(plane_conics) == ((4, 4, 4), 12)
