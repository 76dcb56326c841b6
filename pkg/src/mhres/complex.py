"""Weyman complexes K_*(l, d, s, m) stored as lists of (c_q, e_p) summands."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, groupby

from .combinatorics import SystemData, coh_dim, in_some_pk, pk_below, twist_of


@dataclass(frozen=True)
class CohSummand:
    """One summand H^{q}(m - z d) of K_{nu,p}, indexed by the polynomial set e_p."""
    p: int
    z: int
    nu: int
    cq: tuple[int, ...]   # groups carrying top cohomology (1-based)
    ep: tuple[int, ...]   # polynomial indices, |ep| = p
    twist: tuple[int, ...]
    dim: int

    @property
    def q(self) -> int:
        return self.p - self.nu

    def label(self) -> str:
        return f"H^{self.q}({','.join(map(str, self.twist))})"

    def to_dict(self) -> dict:
        return {"p": self.p, "z": self.z, "cq": list(self.cq), "ep": list(self.ep),
                "twist": list(self.twist), "dim": self.dim}


def summand_order(c: CohSummand):
    return (c.p, c.z, c.ep)


@dataclass(frozen=True)
class WeymanComplex:
    sys: SystemData
    m: tuple[int, ...]
    terms: dict  # nu -> tuple of CohSummand, only nonzero terms

    def term(self, nu: int) -> tuple[CohSummand, ...]:
        return self.terms.get(nu, ())

    def term_dim(self, nu: int) -> int:
        return sum(c.dim for c in self.term(nu))

    def nonzero_terms(self) -> list[int]:
        return sorted(self.terms)

    def is_determinantal(self) -> bool:
        return self.term_dim(2) == 0 and self.term_dim(-1) == 0

    def blocks(self, nu: int) -> list[int]:
        """The distinct p with K_{nu,p} != 0, ascending."""
        return sorted({c.p for c in self.term(nu)})

    def to_dict(self) -> dict:
        return {
            "m": list(self.m),
            "terms": [{"nu": nu, "summands": [c.to_dict() for c in self.terms[nu]]}
                      for nu in sorted(self.terms, reverse=True)],
        }


def make_complex(sys: SystemData, m) -> WeymanComplex:
    """Enumerate every nonzero summand of every K_{nu,p}."""
    m = tuple(int(v) for v in m)
    if len(m) != sys.r:
        raise ValueError(f"degree vector has length {len(m)}, expected r={sys.r}")
    terms = defaultdict(list)
    for p in range(sys.n + 2):
        for ep in combinations(range(sys.n + 1), p):
            z = sum(sys.s[i] for i in ep)
            if in_some_pk(sys, m, z):
                continue
            cq = tuple(k for k in range(1, sys.r + 1) if pk_below(sys, m, k, z))
            q = sum(sys.l[k - 1] for k in cq)
            tw = twist_of(sys, m, z)
            q_check, dim = coh_dim(sys, tw)
            assert q_check == q and dim > 0, (m, ep, tw)
            terms[p - q].append(CohSummand(p, z, p - q, cq, ep, tw, dim))
    return WeymanComplex(sys, m, {nu: tuple(sorted(v, key=summand_order))
                                  for nu, v in terms.items()})


def term_dim(cx: WeymanComplex, nu: int) -> int:
    return cx.term_dim(nu)


def _side(summands, nu):
    return " + ".join(f"K_{{{nu},{p}}}" for p in sorted({c.p for c in summands}))


def format_blocks(cx: WeymanComplex) -> str:
    """Render as 'K_{1,a} + ... -> K_{0,b} + ...' (other terms appended if present)."""
    parts = [_side(cx.term(nu), nu) for nu in sorted(cx.terms, reverse=True)]
    return " -> ".join(parts)


def format_cohs(cx: WeymanComplex) -> str:
    """Render as a sum of cohomologies with multiplicity exponents."""
    parts = []
    for nu in sorted(cx.terms, reverse=True):
        pieces = []
        for (p, z), grp in groupby(cx.term(nu), key=lambda c: (c.p, c.z)):
            grp = list(grp)
            exp = f"^{len(grp)}" if len(grp) > 1 else ""
            pieces.append(grp[0].label() + exp)
        parts.append(" + ".join(pieces))
    return " -> ".join(parts)
