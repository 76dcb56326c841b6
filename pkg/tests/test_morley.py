import pytest

from mhres import critical_degree, validate_system
from mhres.matrices import assemble_matrix
from mhres.morley import bidegrees, dehomogenize, graded_piece, morley_block, morley_decompose, morley_det
from mhres.polyring import C, Poly
from mhres.verify import equivalent_matrices


def test_linear_univariate_gives_classical_bezoutian():
    sys = validate_system((1,), (1,), (1, 1))
    a0, a1, b0, b1 = (Poly.var(v) for v in (C(0, 0), C(0, 1), C(1, 0), C(1, 1)))
    assert dehomogenize(morley_det(sys)) in (a0 * b1 - a1 * b0, a1 * b0 - a0 * b1)


@pytest.mark.parametrize("l,d,s", [((2,), (2,), (1, 1, 1)), ((1,), (2,), (1, 2)), ((1, 1), (1, 1), (1, 1, 2))])
def test_staircase_is_square(l, d, s):
    sys = validate_system(l, d, s)
    table = morley_decompose(sys)
    assert len(table.columns) == sys.n + 1 and len(table.keys) == sys.n + 1


@pytest.mark.parametrize("l,d,s", [((2,), (2,), (1, 1, 1)), ((1,), (2,), (1, 2)), ((1,), (1,), (2, 3))])
def test_one_group_has_critical_bidegree(l, d, s):
    sys = validate_system(l, d, s)
    D = morley_det(sys)
    assert {tuple(x + y for x, y in b) for b in bidegrees(sys, D)} == {critical_degree(sys)}


def test_graded_piece_degrees(plane_conics):
    D = morley_det(plane_conics)
    for m in range(4):
        piece = graded_piece(plane_conics, D, (m,))
        assert piece
        assert bidegrees(plane_conics, piece) == {((3 - m, m),)}


@pytest.mark.parametrize("l,d,s,ms", [
    ((2,), (2,), (1, 1, 1), [(0,), (1,), (2,), (3,)]),
    ((1,), (2,), (1, 2), [(0,), (1,), (2,), (3,), (4,)]),
    ((1,), (1,), (2, 3), [(0,), (1,), (2,), (3,)]),
])
def test_one_group_block_matches_transferred_bezout_block(l, d, s, ms):
    sys = validate_system(l, d, s)
    D = morley_det(sys)
    full = tuple(range(sys.n + 1))
    for m in ms:
        bm = assemble_matrix(sys, m)
        top = [b for b in bm.blocks if b.source == full and b.target == ()]
        _, _, entries = morley_block(sys, m, D=D)
        if not top:
            assert not any(e for row in entries for e in row)
            continue
        assert equivalent_matrices(top[0].entries, entries, transpose=False)


def test_two_group_staircase_degree(bilinear_scaled):
    """With two groups the identity staircase has combined degree rho_k - sum_{t>k} l_t."""
    D = morley_det(bilinear_scaled)
    assert {tuple(x + y for x, y in b) for b in bidegrees(bilinear_scaled, D)} == {(1, 2)}
    assert not graded_piece(bilinear_scaled, D, (1, 1))
