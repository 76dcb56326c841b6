"""Exact first differential of a Weyman complex by homological perturbation.

Cohomology of O(t) on a product of projective spaces is computed with the
tensor product of the Cech complexes of the factors.  Each factor splits by
Laurent monomial, and every such piece has an explicit contracting homotopy,
so the Koszul differential transfers to cohomology by the perturbation series

    d_H = sum_j  pi . K . (-h . K)^j . iota

where K multiplies by the f_i.  The series is finite because every step
lowers the Koszul degree.  A term with j = 0 is a Sylvester entry; longer
chains produce the Bezout-type blocks of hybrid matrices.

A cochain cell is ``(I, sigma, e)``: the exterior basis index set I, one Cech
simplex per group (sorted coordinate indices 0..l_k) and one homogeneous
Laurent exponent per group.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from operator import add

from .combinatorics import SystemData
from .complex import CohSummand
from .polyring import Poly, mono_mul


def _neg(e) -> frozenset:
    return frozenset(j for j, v in enumerate(e) if v < 0)


def _sign_at(sigma, v) -> int:
    """(-1)^(position of v in sorted(sigma + v)), 0-based."""
    return -1 if sum(1 for j in sigma if j < v) % 2 else 1


def factor_kind(size: int, e) -> str:
    n = _neg(e)
    if not n:
        return "h0"
    if len(n) == size + 1:
        return "top"
    return "acyclic"


def factor_homotopy(size: int, sigma, e):
    """Contracting homotopy of one factor: list of (sign, sigma')."""
    n = _neg(e)
    if len(n) == size + 1:
        return []
    v = min(j for j in range(size + 1) if j not in n)
    if v not in sigma or len(sigma) < 2:
        return []
    rest = tuple(j for j in sigma if j != v)
    return [(_sign_at(rest, v), rest)]


def factor_iota_pi(size: int, sigma, e):
    """iota . pi on one factor: list of (sign, sigma')."""
    kind = factor_kind(size, e)
    if kind == "top":
        return [(1, sigma)]
    if kind == "h0" and sigma == (0,):
        return [(1, (j,)) for j in range(size + 1)]
    return []


def factor_coboundary(size: int, sigma, e):
    """Cech differential of one factor restricted to the monomial e."""
    n = _neg(e)
    out = []
    for j in range(size + 1):
        if j in sigma:
            continue
        new = tuple(sorted(sigma + (j,)))
        if n <= set(new):
            out.append((_sign_at(sigma, j), new))
    return out


def _number(c):
    return c.numerator if c.denominator == 1 else c


class CechModel:
    """Perturbation data for a fixed system and generic (or given) polynomials.

    Cochains are flat dicts ``{(I, sigma, e, coef_mono): number}``.  Here e
    concatenates the per-group exponents into one tuple and ``coef_mono`` is a
    monomial in the coefficient indeterminates.  Keeping
    coefficients as monomial keys avoids polynomial arithmetic in the inner
    loops; :meth:`transfer` collects them into polynomials at the end.
    """

    def __init__(self, sys: SystemData, f):
        self.sys = sys
        self.sizes = sys.l
        self.spans = []
        start = 0
        for lk in sys.l:
            self.spans.append((start, start + lk + 1))
            start += lk + 1
        # homogeneous terms of every f_i: (exponent per group, coef monomial, number)
        self.terms = []
        for i, fi in enumerate(f):
            degs = [sys.s[i] * dk for dk in sys.d]
            table = []
            for mono, coef in fi.split(lambda v: v[0] == "x").items():
                exps = []
                for k, lk in enumerate(sys.l, start=1):
                    aff = [0] * lk
                    for (kind, g, j), p in mono:
                        if g == k:
                            aff[j - 1] = p
                    exps += [degs[k - 1] - sum(aff)] + aff
                for cm, c in coef.terms.items():
                    table.append((tuple(exps), cm, _number(c)))
            self.terms.append(table)

    # -- basis conversions ---------------------------------------------------
    def iota(self, summand: CohSummand, label) -> dict:
        """Cech representative of a basis element of H^q(twist) e_I."""
        pieces = [[]]
        for k, (lk, a, dual) in enumerate(zip(self.sizes, label.exps, label.dual)):
            deg = summand.twist[k]
            if dual:
                top = -deg - lk - 1
                e = tuple([-(top - sum(a)) - 1] + [-v - 1 for v in a])
                opts = [(tuple(range(lk + 1)), e)]
            else:
                e = tuple([deg - sum(a)] + list(a))
                opts = [((j,), e) for j in range(lk + 1)]
            pieces = [p + [o] for p in pieces for o in opts]
        return {(summand.ep, tuple(s for s, _ in p), sum((e for _, e in p), ()), ()): 1
                for p in pieces}

    def project(self, cell):
        """pi on one cell (I, sigma, e): (I, exps, dual flags) of the basis element, or None."""
        ep, sigma, exps = cell[:3]
        labels, dual = [], []
        for lk, s, (a, b) in zip(self.sizes, sigma, self.spans):
            e = exps[a:b]
            kind = factor_kind(lk, e)
            if kind == "top" and len(s) == lk + 1:
                labels.append(tuple(-v - 1 for v in e[1:]))
                dual.append(True)
            elif kind == "h0" and s == (0,):
                labels.append(tuple(e[1:]))
                dual.append(False)
            else:
                return None
        return ep, tuple(labels), tuple(dual)

    # -- operators on cochains -------------------------------------------------
    def koszul(self, chain: dict) -> dict:
        out = defaultdict(int)
        for (ep, sigma, exps, cm), c in chain.items():
            for pos, i in enumerate(ep):
                sc = c if pos % 2 == 0 else -c
                rest = ep[:pos] + ep[pos + 1:]
                for u, tm, tc in self.terms[i]:
                    out[(rest, sigma, tuple(map(add, exps, u)), mono_mul(cm, tm))] += sc * tc
        return {k: v for k, v in out.items() if v}

    def homotopy(self, chain: dict) -> dict:
        out = defaultdict(int)
        for (ep, sigma, exps, cm), c in chain.items():
            prefix = [(1, ())]   # (sign, sigmas of earlier groups after iota.pi)
            deg_before = 0
            for k, (lk, s, (a, b)) in enumerate(zip(self.sizes, sigma, self.spans)):
                e = exps[a:b]
                sgn = -1 if deg_before % 2 else 1
                for hs, hsig in factor_homotopy(lk, s, e):
                    for ps, psig in prefix:
                        new_sigma = psig + (hsig,) + sigma[k + 1:]
                        out[(ep, new_sigma, exps, cm)] += c * (sgn * hs * ps)
                prefix = [(ps * fs, psig + (fsig,)) for ps, psig in prefix
                          for fs, fsig in factor_iota_pi(lk, s, e)]
                if not prefix:
                    break
                deg_before += len(s) - 1
        return {k: v for k, v in out.items() if v}

    def coboundary(self, chain: dict) -> dict:
        out = defaultdict(int)
        for (ep, sigma, exps, cm), c in chain.items():
            deg_before = 0
            for k, (lk, s, (a, b)) in enumerate(zip(self.sizes, sigma, self.spans)):
                e = exps[a:b]
                sgn = -1 if deg_before % 2 else 1
                for ds, dsig in factor_coboundary(lk, s, e):
                    out[(ep, sigma[:k] + (dsig,) + sigma[k + 1:], exps, cm)] += c * (sgn * ds)
                deg_before += len(s) - 1
        return {k: v for k, v in out.items() if v}

    def iota_pi(self, chain: dict) -> dict:
        out = defaultdict(int)
        for (ep, sigma, exps, cm), c in chain.items():
            opts = [(1, ())]
            for lk, s, (lo, hi) in zip(self.sizes, sigma, self.spans):
                opts = [(a * b, p + (q,)) for a, p in opts
                        for b, q in factor_iota_pi(lk, s, exps[lo:hi])]
            for sg, sig in opts:
                out[(ep, sig, exps, cm)] += c * sg
        return {k: v for k, v in out.items() if v}

    # -- transferred differential ----------------------------------------------------
    def transfer(self, summand: CohSummand, label, max_steps: int | None = None) -> dict:
        """Image of one K_1 basis element: {(target ep, exps, dual): Poly}."""
        chain = self.iota(summand, label)
        p = summand.p
        acc = defaultdict(dict)
        steps = p if max_steps is None else max_steps
        for j in range(steps + 1):
            image = self.koszul(chain)
            for key, c in image.items():
                target = self.project(key)
                if target is not None:
                    bucket = acc[target]
                    bucket[key[3]] = bucket.get(key[3], 0) + c
            if j == steps or p - j - 1 <= 0:
                break
            # -k with k = (-1)^(Koszul degree) h, applied in degree p - j - 1
            sign = 1 if (p - j - 1) % 2 else -1
            chain = {k: v * sign for k, v in self.homotopy(image).items()}
            if not chain:
                break
        out = {}
        for target, terms in acc.items():
            poly = Poly({m: Fraction(c) for m, c in terms.items() if c})
            if poly:
                out[target] = poly
        return out
