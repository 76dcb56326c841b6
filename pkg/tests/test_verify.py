import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhres.polyring import Poly, make_generic_system, parse_poly
from mhres.verify import (MissingIndeterminateError, det_or_rank, degree_by_scaling, equivalent_matrices,
                          lagrange_coefficients, plant_root, random_assignment, specialize, verify_report)


def _evaluate_at(sys, f, assignment, point):
    values = dict(assignment)
    flat = iter(point)
    for k, lk in enumerate(sys.l, start=1):
        for j in range(1, lk + 1):
            values[("x", k, j)] = Fraction(next(flat))
    return f.evaluate(values).constant()


@pytest.mark.parametrize("point", [(1, 1), (2, Fraction(1, 3))])
def test_planted_root_is_a_root(bilinear_scaled, point):
    assign = plant_root(bilinear_scaled, point, seed=4)
    for f in make_generic_system(bilinear_scaled):
        assert _evaluate_at(bilinear_scaled, f, assign, point) == 0


def test_plant_root_rejects_zero_coordinate(bilinear_scaled):
    with pytest.raises(ValueError):
        plant_root(bilinear_scaled, (0, 1), seed=1)


def test_specialize():
    M = [[Fraction(1), 2], [Poly.const(3), Fraction(1, 2)]]
    assert specialize(M, {}) == [[1, 2], [3, Fraction(1, 2)]]
    with pytest.raises(MissingIndeterminateError):
        specialize([[parse_poly("a0 + 1")]], {})


def test_det_or_rank_examples():
    assert det_or_rank([[1, 2], [3, 4]]) == (-2, 2)
    assert det_or_rank([[1, 2], [2, 4]]) == (0, 1)
    assert det_or_rank([[1, 2, 3], [2, 4, 6]]) == (None, 1)
    assert det_or_rank([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == (Fraction(1, 6) - 1, 2)


def _gauss(M):
    """Plain Fraction elimination used as the reference."""
    A = [[Fraction(x) for x in row] for row in M]
    n, det = len(A), Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            q = A[i][c] / A[c][c]
            A[i] = [x - q * y for x, y in zip(A[i], A[c])]
    return det


@settings(max_examples=80)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=n, max_size=n),
    min_size=n, max_size=n)))
def test_det_matches_gaussian_elimination(M):
    det, rank = det_or_rank(M)
    assert det == _gauss(M)
    assert (rank == len(M)) == (det != 0)


def test_lagrange_recovers_polynomial():
    coeffs = [Fraction(3), Fraction(-1, 2), Fraction(0), Fraction(2)]
    xs = [Fraction(t) for t in range(1, 6)]
    ys = [sum(c * x ** k for k, c in enumerate(coeffs)) for x in xs]
    assert lagrange_coefficients(xs, ys) == coeffs + [0]


def test_degree_by_scaling(bilinear_scaled):
    assert degree_by_scaling(bilinear_scaled, (2, 0), 2, seed=7) == 2
    assert degree_by_scaling(bilinear_scaled, (3, -1), 0, seed=7) == 4


def test_degree_by_scaling_needs_square(bilinear_scaled):
    with pytest.raises(ValueError):
        degree_by_scaling(bilinear_scaled, (0, 0), 0, seed=1)


def test_verify_report(bilinear_scaled):
    rep = verify_report(bilinear_scaled, (2, 0), trials=3, seed=1)
    assert set(rep) == {"m", "trials", "planted_root_pass", "generic_nonzero_pass",
                        "per_poly_degrees", "expected_degrees"}
    assert rep["planted_root_pass"] == rep["generic_nonzero_pass"] == 3
    assert rep["per_poly_degrees"] == rep["expected_degrees"] == [4, 4, 2]
    with pytest.raises(ValueError):
        verify_report(bilinear_scaled, (0, 0))


def test_random_assignment_is_seeded(bilinear_scaled):
    assert random_assignment(bilinear_scaled, 3) == random_assignment(bilinear_scaled, 3)
    assert random_assignment(bilinear_scaled, 3) != random_assignment(bilinear_scaled, 4)


def test_equivalent_matrices():
    rng = random.Random(0)
    A = [[Poly.const(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
    rows, cols = [2, 0, 1], [3, 1, 0, 2]
    B = [[-A[i][j] for j in cols] for i in rows]
    assert equivalent_matrices(A, B)
    assert not equivalent_matrices(A, B, sign=False)
    T = [list(col) for col in zip(*A)]
    assert equivalent_matrices(A, T)
    assert not equivalent_matrices(A, T, transpose=False)
    C = [row[:] for row in A]
    C[0][0] = C[0][0] + 7
    assert not equivalent_matrices(A, C)
