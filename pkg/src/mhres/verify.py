"""Independent numeric oracles for resultant matrices.

Everything is exact: random rationals, planted common roots, fraction-free
elimination and Lagrange interpolation.
"""
from __future__ import annotations

import logging
from collections import Counter
import random
from fractions import Fraction
from math import lcm

from .combinatorics import SystemData, resultant_degrees
from .complex import make_complex
from .matrices import BezoutConvention, DEFAULT_CONVENTION, BlockMatrix, assemble_matrix
from .polyring import Poly, coefficient_vars, system_support

log = logging.getLogger(__name__)

MAX_HEIGHT = 1000


class MissingIndeterminateError(KeyError):
    pass


def random_rational(rng: random.Random, height: int = MAX_HEIGHT) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def random_assignment(sys: SystemData, seed: int) -> dict:
    rng = random.Random(seed)
    return {v: random_rational(rng) for v in coefficient_vars(sys)}


def _mono_value(mono: tuple, point) -> Fraction:
    val = Fraction(1)
    for (_, k, j), e in mono:
        val *= Fraction(point[k - 1][j - 1]) ** e
    return val


def split_point(sys: SystemData, point) -> list[list[Fraction]]:
    """Accept a flat list of n coordinates and cut it into groups."""
    flat = [Fraction(v) for v in point]
    if len(flat) != sys.n:
        raise ValueError(f"point needs {sys.n} coordinates, got {len(flat)}")
    return [flat[g.start - 1:g.stop - 1] for g in sys.groups()]


def plant_root(sys: SystemData, point, seed: int) -> dict:
    """Random coefficients with the constant terms fixed so every f_i vanishes at point."""
    if any(Fraction(v) == 0 for v in point):
        raise ValueError("planted point must have nonzero coordinates")
    grouped = split_point(sys, point)
    assign = random_assignment(sys, seed)
    for i in range(sys.n + 1):
        supp = system_support(sys, i)
        assert supp[0] == ()
        rest = sum(assign[("c", i, t)] * _mono_value(mono, grouped) for t, mono in enumerate(supp) if t)
        assign[("c", i, 0)] = -rest
    return assign


def random_point(sys: SystemData, seed: int) -> list[Fraction]:
    rng = random.Random(seed)
    return [random_rational(rng, 50) for _ in range(sys.n)]


def specialize(matrix, assignment: dict) -> list[list[Fraction]]:
    """Evaluate every entry; entries may be Poly or plain numbers."""
    dense = matrix.dense() if isinstance(matrix, BlockMatrix) else matrix
    out = []
    for row in dense:
        line = []
        for e in row:
            if not isinstance(e, Poly):
                line.append(Fraction(e))
                continue
            missing = e.variables() - assignment.keys()
            if missing:
                raise MissingIndeterminateError(f"no value for {sorted(missing)[0]}")
            line.append(e.evaluate(assignment).constant())
        out.append(line)
    return out


def det_or_rank(M) -> tuple[Fraction | None, int]:
    """Fraction-free elimination: (determinant if square else None, rank).

    Rows are first scaled to integers so the Bareiss steps are exact integer
    divisions.
    """
    A, scale = [], Fraction(1)
    for row in M:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        A.append([int(x * den) for x in row])
        scale *= den
    rows = len(A)
    cols = len(A[0]) if rows else 0
    sign, prev, rank = 1, 1, 0
    for c in range(cols):
        if rank == rows:
            break
        piv = next((i for i in range(rank, rows) if A[i][c]), None)
        if piv is None:
            continue
        if piv != rank:
            A[rank], A[piv] = A[piv], A[rank]
            sign = -sign
        top = A[rank]
        p = top[c]
        for i in range(rank + 1, rows):
            row = A[i]
            q = row[c]
            for j in range(c + 1, cols):
                row[j] = (row[j] * p - q * top[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    if rows != cols:
        return None, rank
    if rank < rows:
        return Fraction(0), rank
    det = sign * A[rows - 1][rows - 1] if rows else 1
    return Fraction(det) / scale, rank


def determinant(M) -> Fraction:
    det, _ = det_or_rank(M)
    if det is None:
        raise ValueError("matrix is not square")
    return det


def lagrange_coefficients(xs, ys) -> list[Fraction]:
    """Coefficients (constant first) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t, b in enumerate(basis):
            coeffs[t] += ys[i] * b / denom
    return coeffs


def scaled(assignment: dict, i: int, t) -> dict:
    return {v: (val * t if v[1] == i else val) for v, val in assignment.items()}


def degree_by_scaling(sys: SystemData, m, i: int, seed: int, matrix: BlockMatrix | None = None,
                      retries: int = 3) -> int:
    """Degree of det(M) in the coefficients of f_i, found by exact interpolation in t."""
    bm = matrix or assemble_matrix(sys, m)
    if not bm.is_square:
        raise ValueError("degree_by_scaling needs a determinantal m")
    nodes = [Fraction(t) for t in range(1, bm.shape[0] + 3)]
    for attempt in range(retries):
        assign = random_assignment(sys, seed + attempt)
        vals = [determinant(specialize(bm, scaled(assign, i, t))) for t in nodes]
        if all(v == 0 for v in vals):
            log.info("degenerate specialization at seed %d, retrying", seed + attempt)
            continue
        coeffs = lagrange_coefficients(nodes, vals)
        return max(k for k, c in enumerate(coeffs) if c)
    raise ArithmeticError(f"determinant vanished for {retries} seeds starting at {seed}")


def verify_report(sys: SystemData, m, trials: int = 10, seed: int = 0,
                  convention: BezoutConvention = DEFAULT_CONVENTION, degrees: bool = True) -> dict:
    """Planted-root and genericity trials plus per-polynomial degree checks."""
    m = tuple(m)
    cx = make_complex(sys, m)
    if not cx.is_determinantal():
        raise ValueError(f"m={m} is not determinantal")
    bm = assemble_matrix(sys, m, convention=convention, complex_=cx)
    planted = generic = 0
    for t in range(trials):
        s = seed + 1000 * t
        log.debug("trial %d seed %d", t, s)
        point = random_point(sys, s)
        if determinant(specialize(bm, plant_root(sys, point, s + 1))) == 0:
            planted += 1
        if determinant(specialize(bm, random_assignment(sys, s + 2))) != 0:
            generic += 1
    expected, _ = resultant_degrees(sys)
    per = [degree_by_scaling(sys, m, i, seed + 7, matrix=bm) for i in range(sys.n + 1)] if degrees else None
    return {
        "m": list(m),
        "trials": trials,
        "planted_root_pass": planted,
        "generic_nonzero_pass": generic,
        "per_poly_degrees": per,
        "expected_degrees": list(expected),
    }


def _permutation_match(A, B) -> list[int] | None:
    """Column map c -> c' with rows of A (columns permuted) a row-permutation of B."""
    if len(A) != len(B) or (A and len(A[0]) != len(B[0])):
        return None
    if not A:
        return []
    cols = len(A[0])
    sig_a = [sorted(str(row[j]) for row in A) for j in range(cols)]
    sig_b = [sorted(str(row[j]) for row in B) for j in range(cols)]
    target_rows = Counter(tuple(str(e) for e in row) for row in B)
    text_a = [[str(e) for e in row] for row in A]
    used = [False] * cols
    choice = [0] * cols

    def search(j):
        if j == cols:
            got = Counter(tuple(row[choice.index(c)] for c in range(cols)) for row in text_a)
            return got == target_rows
        for c in range(cols):
            if not used[c] and sig_b[c] == sig_a[j]:
                used[c], choice[j] = True, c
                if search(j + 1):
                    return True
                used[c] = False
        return False

    return list(choice) if search(0) else None


def equivalent_matrices(A, B, transpose: bool = True, sign: bool = True) -> bool:
    """A equals B up to row/column permutation, optionally transposition and a global sign."""
    candidates = [B]
    if transpose and B:
        candidates.append([list(col) for col in zip(*B)])
    for cand in candidates:
        for g in ((1, -1) if sign else (1,)):
            scaled_cand = [[e * g for e in row] for row in cand]
            if _permutation_match(A, scaled_cand) is not None:
                return True
    return False
