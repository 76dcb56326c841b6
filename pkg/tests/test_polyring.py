from fractions import Fraction
from itertools import permutations
from math import comb, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhres import validate_system
from mhres.polyring import (C, NonExactDivisionError, Poly, X, Y, coef, exact_divide, format_poly,
                            make_generic_system, mono_from_groups, parse_poly, poly_matrix_det,
                            substitute_group, swap_chart, swap_groups)

VARS = [X(1, 1), X(1, 2), Y(1, 1), C(0, 0), C(1, 2)]


@st.composite
def polys(draw, max_terms=4, max_exp=2):
    p = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        mono = Poly.const(draw(st.fractions(min_value=-5, max_value=5, max_denominator=4)))
        for v in VARS:
            mono = mono * Poly.var(v, draw(st.integers(0, max_exp)))
        p = p + mono
    return p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + (-a) == Poly()


@given(polys(), polys())
def test_exact_divide_roundtrip(a, b):
    if b:
        assert exact_divide(a * b, b) == a


@given(polys(), polys(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3),
                                  min_size=len(VARS), max_size=len(VARS)))
def test_evaluation_commutes_with_ring_ops(a, b, values):
    point = dict(zip(VARS, values))
    ev = lambda p: p.evaluate(point).constant()
    assert ev(a * b) == ev(a) * ev(b)
    assert ev(a - b) == ev(a) - ev(b)


def test_small_identities():
    x, y = Poly.var(X(1, 1)), Poly.var(Y(1, 1))
    assert (x - y) * (x + y) == x ** 2 - y ** 2
    assert exact_divide(x ** 2 - y ** 2, x - y) == x + y
    with pytest.raises(NonExactDivisionError):
        exact_divide(x ** 2 + y, x - y)


def test_classical_bezoutian():
    sys = validate_system((1,), (1,), (1, 1))
    f0, f1 = make_generic_system(sys)
    sub = lambda p: substitute_group(p, 1)
    num = f0 * sub(f1) - sub(f0) * f1
    got = exact_divide(num, Poly.var(X(1, 1)) - Poly.var(Y(1, 1)))
    a0, a1, b0, b1 = (Poly.var(v) for v in (C(0, 0), C(0, 1), C(1, 0), C(1, 1)))
    assert got in (a0 * b1 - a1 * b0, a1 * b0 - a0 * b1)


def test_generic_system_labels(bilinear_scaled):
    f0, f1, f2 = make_generic_system(bilinear_scaled)
    assert format_poly(f0, bilinear_scaled.groups()) == "a0 + a1*x1 + a2*x2 + a3*x1*x2"
    assert len(f2.terms) == 9
    assert coef(f0, mono_from_groups([(1,), (1,)])) == Poly.var(C(0, 3))
    assert coef(f0, mono_from_groups([(2,), (0,)])) == Poly()
    assert coef(f2, mono_from_groups([(2,), (2,)])) == Poly.var(C(2, 8))
    assert [len(f.terms) for f in make_generic_system(validate_system((1,), (1,), (1, 1)))] == [2, 2]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=2), st.integers(1, 2), st.integers(1, 3))
def test_support_size(l, d, s_top):
    sys = validate_system(l, [d] * len(l), [1] * sum(l) + [s_top])
    for i, f in enumerate(make_generic_system(sys)):
        assert len(f.terms) == prod(comb(sys.s[i] * dk + lk, lk) for lk, dk in zip(sys.l, sys.d))


def test_substitute_group(bilinear_scaled):
    f0 = make_generic_system(bilinear_scaled)[0]
    sub = substitute_group(f0, 2)
    a = [Poly.var(C(0, t)) for t in range(4)]
    x1, y2 = Poly.var(X(1, 1)), Poly.var(Y(2, 1))
    assert sub == a[0] + a[1] * x1 + a[2] * y2 + a[3] * x1 * y2
    assert substitute_group(sub, 2) == sub
    assert substitute_group(f0, 3) == f0
    assert substitute_group(sub, 2, target="x") == f0


def _leibniz(M):
    n = len(M)
    total = Poly()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.const(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        total = total + term
    return total


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.lists(st.lists(polys(max_terms=2, max_exp=1),
                                                              min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(M):
    assert poly_matrix_det(M) == _leibniz(M)


def test_det_examples():
    a0, a1, b0, b1 = (Poly.var(v) for v in (C(0, 0), C(0, 1), C(1, 0), C(1, 1)))
    assert poly_matrix_det([[a0, a1], [b0, b1]]) == a0 * b1 - a1 * b0
    assert poly_matrix_det([[a0, a1, b0], [a0, a1, b0], [b1, a0, a1]]) == Poly()
    with pytest.raises(ValueError):
        poly_matrix_det([[a0, a1]])


@given(polys())
def test_parse_inverts_format(p):
    assert parse_poly(format_poly(p)) == p


def test_parse_forms(bilinear_scaled):
    assert parse_poly("a3*x1*x2 - 1/2", bilinear_scaled.groups()) == (
        Poly.var(C(0, 3)) * Poly.var(X(1, 1)) * Poly.var(X(2, 1)) - Fraction(1, 2))
    assert parse_poly("-c4") == -Poly.var(C(2, 4))


def test_group_swap_relabel(bilinear_scaled):
    # exchanging x1 and x2 maps a1 <-> a2 and c4 <-> c6
    sw = swap_groups(bilinear_scaled, 1, 2)
    assert sw[C(0, 1)] == C(0, 2) and sw[C(0, 3)] == C(0, 3)
    assert sw[C(2, 4)] == C(2, 6)


def test_chart_relabel(plane_conics):
    sw = swap_chart(plane_conics, 1, 2)
    assert sw[C(0, 0)] == C(0, 2) and sw[C(0, 2)] == C(0, 0)
    assert sw[C(0, 3)] == C(0, 4) and sw[C(0, 1)] == C(0, 1)
    assert sorted(sw.values()) == sorted(sw)
