"""Serialization of systems and matrices: JSON, CSV and LaTeX."""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from itertools import permutations

from .combinatorics import SystemData, validate_system
from .matrices import BlockMatrix
from .polyring import (Poly, coef_letter, format_poly, make_generic_system, parse_poly,
                       system_support)
from .verify import specialize


# -- systems -------------------------------------------------------------------

def _exp_key(mono_parts) -> str:
    return "(" + ",".join(str(e) for part in mono_parts for e in part) + ")"


def system_to_json(sys: SystemData, assignment: dict | None = None) -> dict:
    """System in the documented schema; coefficients symbolic unless an assignment is given."""
    coeffs = {}
    for i in range(sys.n + 1):
        table = {}
        for t, mono in enumerate(system_support(sys, i)):
            exps = [[0] * lk for lk in sys.l]
            for (_, k, j), e in mono:
                exps[k - 1][j - 1] = e
            key = _exp_key(exps)
            var = ("c", i, t)
            table[key] = str(assignment[var]) if assignment is not None else f"{coef_letter(i)}{t}"
        coeffs[f"f{i}"] = table
    return {"l": list(sys.l), "d": list(sys.d), "s": list(sys.s), "coefficients": coeffs}


def system_from_json(data: dict) -> tuple[SystemData, list[Poly]]:
    sys = validate_system(data["l"], data["d"], data["s"])
    polys = []
    for i in range(sys.n + 1):
        table = data.get("coefficients", {}).get(f"f{i}")
        if table is None:
            polys.append(make_generic_system(sys)[i])
            continue
        p = Poly()
        for key, val in table.items():
            exps = [int(v) for v in key.strip("()").split(",") if v.strip()]
            if len(exps) != sys.n:
                raise ValueError(f"f{i}: exponent {key} has {len(exps)} entries, expected {sys.n}")
            mono = []
            pos = 0
            for k, lk in enumerate(sys.l, start=1):
                mono += [(("x", k, j), exps[pos + j - 1]) for j in range(1, lk + 1) if exps[pos + j - 1]]
                pos += lk
            p += parse_poly(val) * Poly({tuple(sorted(mono)): Fraction(1)})
        polys.append(p)
    return sys, polys


# -- matrices --------------------------------------------------------------------

def matrix_to_json(bm: BlockMatrix) -> dict:
    return {
        "m": list(bm.m),
        "shape": list(bm.shape),
        "transposed": bm.transposed,
        "rows": [str(x) for x in bm.rows],
        "cols": [str(x) for x in bm.cols],
        "blocks": [blk.to_dict() for blk in bm.blocks],
    }


def dense_from_json(data: dict) -> list[list[Poly]]:
    """Rebuild the dense matrix from its JSON block list."""
    rows, cols = data["shape"]
    out = [[Poly() for _ in range(cols)] for _ in range(rows)]
    for blk in data["blocks"]:
        for i, line in enumerate(blk["entries"]):
            for j, txt in enumerate(line):
                out[blk["row0"] + i][blk["col0"] + j] = parse_poly(txt)
    return out


def matrix_to_csv(bm: BlockMatrix, assignment: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in specialize(bm, assignment):
        writer.writerow([str(v) for v in row])
    return buf.getvalue()


# -- brackets -------------------------------------------------------------------

def _perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def bracket(polys, cols) -> Poly:
    """det of the coefficient matrix: row r is f_{polys[r]}, column c is coefficient cols[c]."""
    out = Poly()
    for perm in permutations(range(len(cols))):
        term = Poly.const(_perm_sign(perm))
        for r, c in enumerate(perm):
            term = term * Poly.var(("c", polys[r], cols[c]))
        out += term
    return out


def to_brackets(p: Poly, polys) -> list[tuple[Fraction, tuple[int, ...]]] | None:
    """Write p as a combination of brackets over f_polys, or None if impossible.

    Brackets are returned with increasing coefficient indices.
    """
    polys = tuple(polys)
    found = {}
    for mono, c in p.terms.items():
        if len(mono) != len(polys) or any(e != 1 or v[0] != "c" for v, e in mono):
            return None
        idx = {v[1]: v[2] for v, _ in mono}
        if sorted(idx) != sorted(polys):
            return None
        cols = tuple(idx[i] for i in polys)
        if list(cols) == sorted(cols) and len(set(cols)) == len(cols):
            found[cols] = c
    rebuilt = Poly()
    for cols, c in found.items():
        rebuilt += bracket(polys, cols) * c
    if rebuilt != p:
        return None
    return [(c, cols) for cols, c in sorted(found.items())]


def bracket_text(p: Poly, polys) -> str | None:
    terms = to_brackets(p, polys)
    if terms is None:
        return None
    if not terms:
        return "0"
    out = ""
    for c, cols in terms:
        name = ("[" + "".join(map(str, cols)) + "]" if max(cols) < 10
                else "[" + ",".join(map(str, cols)) + "]")
        mag = abs(c)
        piece = name if mag == 1 else f"{mag}{name}"
        out += (" - " if c < 0 else " + ") + piece if out else ("-" if c < 0 else "") + piece
    return out


def _latex_poly(p: Poly, groups) -> str:
    txt = re.sub(r"([a-z])(\d+)", r"\1_{\2}", format_poly(p, groups))
    return txt.replace("*", " ")


def matrix_to_latex(bm: BlockMatrix) -> str:
    """Symbolic matrix; Bezout entries that are bracket combinations use bracket notation."""
    groups = bm.sys.groups()
    dense = [[None] * len(bm.cols) for _ in bm.rows]
    for blk in bm.blocks:
        polys = tuple(i for i in blk.source if i not in blk.target)
        for i, line in enumerate(blk.entries):
            for j, e in enumerate(line):
                text = None
                if blk.kind == "bezout" and e and len(polys) > 1:
                    text = bracket_text(e, polys)
                dense[blk.row0 + i][blk.col0 + j] = text if text is not None else _latex_poly(e, groups)
    body = " \\\\\n".join(" & ".join(row) for row in dense)
    return "\\left[\\begin{array}{" + "c" * len(bm.cols) + "}\n" + body + "\n\\end{array}\\right]"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
