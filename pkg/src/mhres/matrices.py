"""Matrices of the first differential K_1 -> K_0, assembled block by block.

Rows are indexed by the K_1 side, columns by the K_0 side.  Each block is
one of: zero, Sylvester (a single coefficient with a Koszul sign), or Bezout
(coefficients of a partial Bezoutian in doubled variables x, y).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .combinatorics import SystemData
from .cech import CechModel
from .complex import CohSummand, WeymanComplex, make_complex
from .polyring import (Poly, X, exact_divide, format_mono, group_monomials,
                       is_xy, make_generic_system, mono_from_groups, poly_matrix_det)


class DegreeMismatchError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """An internal consistency check failed while building a matrix."""


# -- bases ---------------------------------------------------------------------

@dataclass(frozen=True)
class BasisLabel:
    ep: tuple[int, ...]
    exps: tuple[tuple[int, ...], ...]   # one exponent tuple per group
    dual: tuple[bool, ...]              # per group: True for S(.)^*

    def __str__(self):
        parts = []
        for k, (e, dl) in enumerate(zip(self.exps, self.dual), start=1):
            mono = format_mono(mono_from_groups([() ] * (k - 1) + [e]))
            parts.append((mono or "1") + ("*" if dl else ""))
        body = "|".join(parts)
        return "e" + "".join(map(str, self.ep)) + ":" + body if self.ep else body


def group_basis(size: int, twist: int) -> tuple[bool, list[tuple[int, ...]]]:
    """Monomial basis of one factor H^*(P^size, twist): (is_dual, exponents)."""
    if twist >= 0:
        return False, group_monomials(size, twist)
    if twist < -size:
        return True, group_monomials(size, -twist - size - 1)[::-1]
    return False, []


def twist_basis(sys: SystemData, twist, ep=()) -> list[BasisLabel]:
    per = [group_basis(lk, t) for lk, t in zip(sys.l, twist)]
    dual = tuple(d for d, _ in per)
    return [BasisLabel(tuple(ep), exps, dual) for exps in product(*(b for _, b in per))]


def basis_of_summand(sys: SystemData, summand: CohSummand) -> list[BasisLabel]:
    out = twist_basis(sys, summand.twist, summand.ep)
    assert len(out) == summand.dim, (summand, len(out))
    return out


# -- multiplication maps -------------------------------------------------------

def _offset(src: BasisLabel, tgt: BasisLabel):
    """Exponent the multiplier must carry to send src to tgt, or None."""
    parts = []
    for a, b, dl in zip(src.exps, tgt.exps, src.dual):
        u = tuple(x - y for x, y in zip(a, b)) if dl else tuple(y - x for x, y in zip(a, b))
        if min(u, default=0) < 0:
            return None
        parts.append(u)
    return parts


def _check_twists(sys: SystemData, g_degs, source_twist, target_twist):
    for k, (lk, s, t) in enumerate(zip(sys.l, source_twist, target_twist), start=1):
        if (s >= 0) != (t >= 0) or -lk <= s < 0 or -lk <= t < 0:
            raise DegreeMismatchError(f"group {k}: twists {s} -> {t} are not both primal or both dual")
        if t - s < 0 or (g_degs is not None and g_degs[k - 1] > t - s):
            raise DegreeMismatchError(f"group {k}: multiplier degree does not fit {s} -> {t}")


def group_degrees(sys: SystemData, g: Poly) -> list[int]:
    return [max(0, g.degree_in(lambda v, k=k: v[0] == "x" and v[1] == k)) for k in range(1, sys.r + 1)]


def mult_map(sys: SystemData, g: Poly, source_twist, target_twist, sign: int = 1):
    """Matrix of multiplication by g from H^*(source_twist) to H^*(target_twist).

    Primal factors multiply, dual factors contract; the entry at (alpha, beta)
    is coef(g, x^u) with u = |beta - alpha| taken in the direction of the map.
    Returns (row labels, column labels, entries).
    """
    _check_twists(sys, group_degrees(sys, g), source_twist, target_twist)
    rows = twist_basis(sys, source_twist)
    cols = twist_basis(sys, target_twist)
    table = g.split(is_xy)
    entries = []
    for a in rows:
        line = []
        for b in cols:
            u = _offset(a, b)
            c = table.get(mono_from_groups(u)) if u is not None else None
            line.append(c * sign if c is not None else Poly())
        entries.append(line)
    return rows, cols, entries


# -- blocks ----------------------------------------------------------------------

@dataclass
class Block:
    a: int
    b: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    kind: str                      # 'zero', 'sylvester' or 'bezout'
    row0: int
    col0: int
    entries: list                  # dense list of rows of Poly
    substituted: tuple[int, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def to_dict(self, fmt=str) -> dict:
        return {"a": self.a, "b": self.b, "sourceI": list(self.source), "targetJ": list(self.target),
                "kind": self.kind, "substituted": list(self.substituted),
                "row0": self.row0, "col0": self.col0,
                "entries": [[fmt(e) for e in row] for row in self.entries]}


@dataclass
class BlockMatrix:
    sys: SystemData
    m: tuple[int, ...]
    rows: list[BasisLabel]
    cols: list[BasisLabel]
    blocks: list[Block] = field(default_factory=list)
    transposed: bool = False   # False: K_1 rows, K_0 columns

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def dense(self) -> list[list[Poly]]:
        out = [[Poly() for _ in self.cols] for _ in self.rows]
        for blk in self.blocks:
            for i, row in enumerate(blk.entries):
                for j, e in enumerate(row):
                    out[blk.row0 + i][blk.col0 + j] = e
        return out

    def select(self, a: int | None = None, b: int | None = None) -> list[Block]:
        return [blk for blk in self.blocks
                if (a is None or blk.a == a) and (b is None or blk.b == b)]

    def restrict(self, a: int, b: int) -> "BlockMatrix":
        """Sub-matrix K_{1,a} -> K_{0,b} with its own row and column labels."""
        blks = self.select(a, b)
        if not blks:
            raise ValueError(f"no block K_(1,{a}) -> K_(0,{b})")
        row_starts = sorted({x.row0 for x in blks})
        col_starts = sorted({x.col0 for x in blks})
        row_len = {x.row0: x.shape[0] for x in blks}
        col_len = {x.col0: x.shape[1] for x in blks}
        row_map, rows = {}, []
        for r0 in row_starts:
            row_map[r0] = len(rows)
            rows += self.rows[r0:r0 + row_len[r0]]
        col_map, cols = {}, []
        for c0 in col_starts:
            col_map[c0] = len(cols)
            cols += self.cols[c0:c0 + col_len[c0]]
        moved = [Block(x.a, x.b, x.source, x.target, x.kind, row_map[x.row0], col_map[x.col0],
                       x.entries, x.substituted) for x in blks]
        return BlockMatrix(self.sys, self.m, rows, cols, moved, self.transposed)

    def block_grid(self, a: int, b: int) -> list[list[Poly]]:
        """Dense sub-matrix K_{1,a} -> K_{0,b} (all source/target summands)."""
        if not self.select(a, b):
            return []
        return self.restrict(a, b).dense()


def koszul_sign(source: tuple[int, ...], target: tuple[int, ...]) -> int:
    """Sign of the shuffle listing source minus target first, then target.

    When one index is removed this is (-1)^(k+1), k its 1-based position.
    """
    moved = [i for i in source if i not in target]
    inversions = sum(1 for i in moved for j in target if j < i)
    return -1 if inversions % 2 else 1


def sylvester_entries(sys, f, src: CohSummand, tgt: CohSummand, src_basis, tgt_basis):
    removed = [i for i in src.ep if i not in tgt.ep]
    sign = koszul_sign(src.ep, tgt.ep)
    table = f[removed[0]].split(is_xy)
    out = []
    for a in src_basis:
        line = []
        for b in tgt_basis:
            u = _offset(a, b)
            c = table.get(mono_from_groups(u)) if u is not None else None
            line.append(c * sign if c is not None else Poly())
        out.append(line)
    return out


def sylvester_block(sys: SystemData, m, a: int, f=None) -> list[list[Poly]]:
    """Dense block K_{1,a} -> K_{0,a-1} for generic (or given) polynomials."""
    bm = assemble_matrix(sys, m, f=f)
    return bm.block_grid(a, a - 1)


# -- partial Bezoutians ------------------------------------------------------------

def substituted_vars(sys: SystemData, groups) -> list[tuple]:
    return [X(k, j) for k in groups for j in range(1, sys.l[k - 1] + 1)]


def partial_bezoutian(sys: SystemData, f, polys, groups) -> Poly:
    """Divided-difference determinant of f_polys with the groups' variables doubled.

    Column t evaluates the polynomials after replacing the first t variables
    of the listed groups (in the given order) by their y-copies; the result is
    divided exactly by the product of (x - y) over those variables.
    """
    polys = list(polys)
    xs = substituted_vars(sys, groups)
    if len(xs) != len(polys) - 1:
        raise ValueError(f"{len(polys)} polynomials need {len(polys) - 1} substituted variables, got {len(xs)}")
    cols = []
    for t in range(len(polys)):
        ren = {v: ("y", v[1], v[2]) for v in xs[:t]}
        cols.append([f[i].rename(ren) for i in polys])
    mat = [[cols[t][i] for t in range(len(polys))] for i in range(len(polys))]
    num = poly_matrix_det(mat)
    den = Poly.const(1)
    for v in xs:
        den = den * (Poly.var(v) - Poly.var(("y", v[1], v[2])))
    try:
        return exact_divide(num, den)
    except ArithmeticError as exc:
        raise ConstructionError(f"partial Bezoutian of {polys} over groups {groups}: {exc}") from exc


def _bezout_key(src: BasisLabel, tgt: BasisLabel, subs: set, src_side: str):
    """x/y monomial whose coefficient gives the entry, or None if none fits."""
    out = []
    other = "x" if src_side == "y" else "y"
    for k, (a, b, da, db) in enumerate(zip(src.exps, tgt.exps, src.dual, tgt.dual), start=1):
        if k in subs:
            out += [((src_side, k, j), e) for j, e in enumerate(a, start=1) if e]
            out += [((other, k, j), e) for j, e in enumerate(b, start=1) if e]
            continue
        u = tuple(x - y for x, y in zip(a, b)) if da else tuple(y - x for x, y in zip(a, b))
        if min(u, default=0) < 0:
            return None
        out += [(("x", k, j), e) for j, e in enumerate(u, start=1) if e]
    return tuple(sorted(out))


@dataclass(frozen=True)
class BezoutConvention:
    """How partial Bezoutian coefficients are read into a block.

    src_side -- which copy (x or y) of a substituted group carries the K_1
    (dual) exponent; order -- 'id' substitutes groups 1..r in turn, 'rev'
    in the opposite order.
    """
    src_side: str = "y"
    order: str = "id"

    def group_order(self, groups) -> list[int]:
        return sorted(groups, reverse=(self.order == "rev"))


DEFAULT_CONVENTION = BezoutConvention()


def switching_groups(src: CohSummand, tgt: CohSummand) -> tuple[int, ...]:
    return tuple(k for k in src.cq if k not in tgt.cq)


# -- assembly --------------------------------------------------------------------

def assemble_matrix(sys: SystemData, m, f=None, convention: BezoutConvention = DEFAULT_CONVENTION,
                    complex_: WeymanComplex | None = None, method: str = "cech") -> BlockMatrix:
    """Matrix of delta_1 : K_1 -> K_0 (square iff m is determinantal)."""
    cx = complex_ or make_complex(sys, m)
    f = f if f is not None else make_generic_system(sys)
    src_terms, tgt_terms = cx.term(1), cx.term(0)
    src_bases = [basis_of_summand(sys, c) for c in src_terms]
    tgt_bases = [basis_of_summand(sys, c) for c in tgt_terms]
    bm = BlockMatrix(sys, cx.m, [x for b in src_bases for x in b], [x for b in tgt_bases for x in b])
    if method == "cech":
        return _fill_transferred(bm, sys, f, src_terms, tgt_terms, src_bases, tgt_bases)
    if method != "bezoutian":
        raise ValueError(f"unknown method {method!r}")
    pb_cache = {}
    r0 = 0
    for src, sb in zip(src_terms, src_bases):
        c0 = 0
        for tgt, tb in zip(tgt_terms, tgt_bases):
            a, b = src.p, tgt.p
            nested = set(tgt.ep) <= set(src.ep)
            if a - 1 < b or not nested:
                kind, entries, subs = "zero", [[Poly() for _ in tb] for _ in sb], ()
            elif a - 1 == b:
                kind, subs = "sylvester", ()
                entries = sylvester_entries(sys, f, src, tgt, sb, tb)
            else:
                kind = "bezout"
                subs = switching_groups(src, tgt)
                if sum(sys.l[k - 1] for k in subs) != a - b - 1:
                    raise ConstructionError(f"groups {subs} do not account for a-b-1={a - b - 1}")
                polys = tuple(i for i in src.ep if i not in tgt.ep)
                order = tuple(convention.group_order(subs))
                key = (polys, order)
                if key not in pb_cache:
                    pb_cache[key] = partial_bezoutian(sys, f, polys, order).split(is_xy)
                table = pb_cache[key]
                sign = koszul_sign(src.ep, tgt.ep)
                sub_set = set(subs)
                entries = []
                for x in sb:
                    line = []
                    for y in tb:
                        k = _bezout_key(x, y, sub_set, convention.src_side)
                        c = table.get(k) if k is not None else None
                        line.append(c * sign if c is not None else Poly())
                    entries.append(line)
            bm.blocks.append(Block(a, b, src.ep, tgt.ep, kind, r0, c0, entries, subs))
            c0 += len(tb)
        r0 += len(sb)
    return bm


def _fill_transferred(bm, sys, f, src_terms, tgt_terms, src_bases, tgt_bases):
    model = CechModel(sys, f)
    col_index = {}
    for tgt, tb in zip(tgt_terms, tgt_bases):
        for j, lab in enumerate(tb):
            col_index[(tgt.ep, lab.exps, lab.dual)] = (tgt.ep, j)
    r0 = 0
    for src, sb in zip(src_terms, src_bases):
        grids = {tgt.ep: [[Poly() for _ in tb] for _ in sb] for tgt, tb in zip(tgt_terms, tgt_bases)}
        for i, lab in enumerate(sb):
            for key, c in model.transfer(src, lab).items():
                if key not in col_index:
                    raise ConstructionError(f"transferred image leaves K_0: {key}")
                ep, j = col_index[key]
                grids[ep][i][j] = c
        c0 = 0
        for tgt, tb in zip(tgt_terms, tgt_bases):
            a, b = src.p, tgt.p
            entries = grids[tgt.ep]
            if not any(e for row in entries for e in row):
                kind = "zero"
            elif a - 1 < b:
                raise ConstructionError(f"nonzero map K_(1,{a}) -> K_(0,{b})")
            else:
                kind = "sylvester" if a - 1 == b else "bezout"
            subs = switching_groups(src, tgt) if kind == "bezout" else ()
            bm.blocks.append(Block(a, b, src.ep, tgt.ep, kind, r0, c0, entries, subs))
            c0 += len(tb)
        r0 += len(sb)
    return bm


def bezout_block(sys: SystemData, m, a: int, b: int, f=None,
                 convention: BezoutConvention = DEFAULT_CONVENTION) -> list[list[Poly]]:
    if a - 1 <= b:
        raise ValueError("Bezout blocks need a - 1 > b; use sylvester_block for a - 1 = b")
    return assemble_matrix(sys, m, f=f, convention=convention).block_grid(a, b)


def matrix_det(bm: BlockMatrix) -> Poly:
    if not bm.is_square:
        raise ValueError(f"matrix is {bm.shape[0]}x{bm.shape[1]}, not square")
    return poly_matrix_det(bm.dense())
