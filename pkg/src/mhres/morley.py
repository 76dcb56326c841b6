"""Staircase (Morley-type) determinant in homogeneous coordinates.

Each f_i is homogenized with coordinates x_{k,0}.  Walking through the
groups in the identity order, coordinate x_{k,j} is replaced by y_{k,j} one
at a time and the divided difference is recorded as a column.  Inside every
group but the last, the final coordinate x_{k,l_k} is never replaced.  It
is only divided out, and the quotient is carried into the next group.  This
gives exactly n + 1 columns, so the matrix of divided differences is square.
"""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import SystemData, critical_degree
from .polyring import Poly, exact_divide, make_generic_system, poly_matrix_det


def homogenize(sys: SystemData, f) -> list[Poly]:
    out = []
    for i, fi in enumerate(f):
        degs = [sys.s[i] * dk for dk in sys.d]
        terms = {}
        for mono, c in fi.terms.items():
            extra = []
            for k, dk in enumerate(degs, start=1):
                used = sum(e for v, e in mono if v[0] == "x" and v[1] == k)
                if dk > used:
                    extra.append((("x", k, 0), dk - used))
            terms[tuple(sorted(mono + tuple(extra)))] = c
        out.append(Poly(terms))
    return out


def _swap_to_y(p: Poly, v) -> Poly:
    return p.rename({v: ("y", v[1], v[2])})


def divided_difference(p: Poly, v) -> Poly:
    """(p - p[v := y_v]) / (v - y_v)."""
    y = ("y", v[1], v[2])
    return exact_divide(p - _swap_to_y(p, v), Poly.var(v) - Poly.var(y))


@dataclass
class MorleyTable:
    """Columns of the staircase: ``columns[c][i]`` for polynomial i.

    ``keys[c]`` is the homogeneous coordinate (k, j) that column c differences.
    """
    keys: list[tuple[int, int]]
    columns: list[list[Poly]]

    def matrix(self) -> list[list[Poly]]:
        return [[col[i] for col in self.columns] for i in range(len(self.columns[0]))]


def morley_decompose(sys: SystemData, f=None) -> MorleyTable:
    f = homogenize(sys, f or make_generic_system(sys))
    keys, columns = [], []
    current = list(f)
    for k, lk in enumerate(sys.l, start=1):
        last_group = k == sys.r
        for j in range(lk + 1):
            v = ("x", k, j)
            diffs = [divided_difference(p, v) for p in current]
            if j == lk and not last_group:
                current = diffs
                break
            keys.append((k, j))
            columns.append(diffs)
            current = [_swap_to_y(p, v) for p in current]
    if len(columns) != sys.n + 1:
        raise AssertionError("staircase is not square")
    return MorleyTable(keys, columns)


def morley_det(sys: SystemData, f=None) -> Poly:
    return poly_matrix_det(morley_decompose(sys, f).matrix())


def bidegrees(sys: SystemData, p: Poly) -> set[tuple[tuple[int, int], ...]]:
    """Set of per-group (x-degree, y-degree) pairs over the support of p."""
    out = set()
    for mono in p.split(lambda v: v[0] in "xy"):
        out.add(tuple((sum(e for v, e in mono if v[0] == "x" and v[1] == k),
                       sum(e for v, e in mono if v[0] == "y" and v[1] == k))
                      for k in range(1, sys.r + 1)))
    return out


def graded_piece(sys: SystemData, D: Poly, m) -> Poly:
    """Terms of x-degree rho - m and y-degree m in every group."""
    rho = critical_degree(sys)
    want = tuple((rk - mk, mk) for rk, mk in zip(rho, m))
    out = Poly()
    for mono, c in D.split(lambda v: v[0] in "xy").items():
        got = tuple((sum(e for v, e in mono if v[0] == "x" and v[1] == k),
                     sum(e for v, e in mono if v[0] == "y" and v[1] == k))
                    for k in range(1, sys.r + 1))
        if got == want:
            out += c * Poly({mono: 1})
    return out


def dehomogenize(p: Poly) -> Poly:
    return p.evaluate({v: 1 for v in p.variables() if v[0] in "xy" and v[2] == 0})


def morley_block(sys: SystemData, m, f=None, D: Poly | None = None) -> tuple[list, list, list[list[Poly]]]:
    """Matrix S(rho - m)^* -> S(m) read off the dehomogenized staircase determinant.

    Rows follow the dual basis of S(rho - m) and are read off the y-part;
    columns follow the monomial basis of S(m) and are read off the x-part.
    The relevant terms are those of x-degree m and y-degree rho - m, that is
    graded_piece at rho - m.  Returns (row exponents, column exponents, entries).
    """
    from .matrices import twist_basis

    rho = critical_degree(sys)
    if D is None:
        D = morley_det(sys, f)
    dual_m = [rk - mk for rk, mk in zip(rho, m)]
    piece = dehomogenize(graded_piece(sys, D, dual_m))
    rows = [lab.exps for lab in twist_basis(sys, dual_m)]
    cols = [lab.exps for lab in twist_basis(sys, m)]
    by_mono = piece.split(lambda v: v[0] in "xy")

    def key(y_exps, x_exps):
        mono = []
        for kind, exps in (("x", x_exps), ("y", y_exps)):
            for k, e in enumerate(exps, start=1):
                mono += [((kind, k, j), p) for j, p in enumerate(e, start=1) if p]
        return tuple(sorted(mono))

    entries = [[by_mono.get(key(a, b), Poly()) for b in cols] for a in rows]
    return rows, cols, entries
