"""Bounds, filters and exhaustive search for determinantal degree vectors."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .combinatorics import SystemData
from .complex import make_complex

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Box:
    """Per-coordinate closed integer intervals [lo_k, hi_k]."""
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    perm: tuple[int, ...] | None = None

    @property
    def empty(self) -> bool:
        return any(a > b for a, b in zip(self.lo, self.hi))

    def intervals(self) -> list[list[int]]:
        return [[a, b] for a, b in zip(self.lo, self.hi)]

    def points(self):
        if self.empty:
            return iter(())
        return product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def center(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a + b, 2) for a, b in zip(self.lo, self.hi))

    def __contains__(self, m) -> bool:
        return all(a <= v <= b for a, v, b in zip(self.lo, m, self.hi))


def _ssum(s, a: int, b: int) -> int:
    """sum_{i=a}^{b} s_i, empty when a > b."""
    return sum(s[max(a, 0):b + 1]) if a <= b else 0


def m_bounds(sys: SystemData) -> Box:
    lo = tuple(max(-dk, -lk) for lk, dk in zip(sys.l, sys.d))
    hi = tuple(dk * sys.sigma - 1 + min(dk - lk, 0) for lk, dk in zip(sys.l, sys.d))
    return Box(lo, hi)


def cheap_filter(sys: SystemData, m) -> bool:
    """Necessary condition for m to be determinantal (false => not determinantal)."""
    s, n = sys.s, sys.n
    top2 = s[n - 1] + s[n]
    low = _ssum(s, 0, n - 2)
    one = any(mk < dk * top2 for mk, dk in zip(m, sys.d))
    two = any(mk >= dk * low - lk for mk, lk, dk in zip(m, sys.l, sys.d))
    return one and two


def is_determinantal_vector(sys: SystemData, m) -> bool:
    return make_complex(sys, m).is_determinantal()


def enumerate_det_vectors(sys: SystemData, use_filter: bool = True) -> list[tuple[tuple[int, ...], int]]:
    """All determinantal m with the matrix dimension dim K_0.

    Sorted by dimension, then by m in descending lexicographic order (the
    order in which the reference listing presents them).
    """
    out = []
    box = m_bounds(sys)
    for m in box.points():
        if use_filter and not cheap_filter(sys, m):
            continue
        cx = make_complex(sys, m)
        if cx.is_determinantal():
            out.append((m, cx.term_dim(0)))
    if use_filter and __debug__:
        for m, _ in out:
            assert m in box and cheap_filter(sys, m)
    out.sort(key=lambda t: (t[1], tuple(-v for v in t[0])))
    return out


def prefix_weights(sys: SystemData, perm) -> tuple[list[int], list[int]]:
    """For a permutation pi (perm[k-1] = pi(k)), return pi[k] and the sum before k.

    pi[k] = sum of l_i with pi(i) <= pi(k); the preceding sum is pi[k] - l_k,
    which is zero for the first group in pi-order.
    """
    upto = [sum(sys.l[i] for i in range(sys.r) if perm[i] <= perm[k]) for k in range(sys.r)]
    before = [upto[k] - sys.l[k] for k in range(sys.r)]
    return upto, before


def perm_box(sys: SystemData, perm) -> Box:
    n, s = sys.n, sys.s
    upto, before = prefix_weights(sys, perm)
    lo, hi = [], []
    for k in range(sys.r):
        lk, dk = sys.l[k], sys.d[k]
        lo.append(dk * _ssum(s, n - upto[k] + 2, n) - lk)
        hi.append(dk * _ssum(s, 0, before[k] + 1) - 1)
    return Box(tuple(lo), tuple(hi), tuple(perm))


def all_perm_boxes(sys: SystemData, max_r: int = 5) -> list[Box]:
    if sys.r > max_r:
        raise ValueError(f"r={sys.r} needs {sys.r}! permutations; raise max_r to run anyway")
    return [perm_box(sys, p) for p in permutations(range(1, sys.r + 1))]


def det_boxes(sys: SystemData, max_r: int = 5) -> list[Box]:
    """Nonempty determinantal boxes, one per distinct interval tuple."""
    seen, out = set(), []
    for box in all_perm_boxes(sys, max_r):
        if box.empty or (box.lo, box.hi) in seen:
            continue
        seen.add((box.lo, box.hi))
        out.append(box)
    return out


def has_deter(sys: SystemData, max_r: int = 5) -> tuple[bool, tuple[int, ...] | None]:
    """Whether the data admits a determinantal formula, with a witnessing permutation."""
    for box in all_perm_boxes(sys, max_r):
        if not box.empty:
            return True, box.perm
    return False, None


def necessary_condition_r_le_2(sys: SystemData) -> bool:
    """Permutation-free test: necessary for every r, sufficient only for r <= 2."""
    s, n = sys.s, sys.n
    return all(dk * _ssum(s, n - lk + 2, n) - lk < dk * (s[0] + s[1])
               for lk, dk in zip(sys.l, sys.d))


def pure_vectors(sys: SystemData) -> list[tuple[tuple[int, ...], str]]:
    """Degree vectors of pure (Sylvester) formulae when s is not all ones."""
    if all(v == 1 for v in sys.s):
        raise ValueError("unmixed data: use unmixed_pure_exists")
    if sys.l == (1,):
        return [((sys.d[0] * (sys.s[0] + sys.s[1]) - 1,), "sylvester"), ((-1,), "sylvester")]
    if sys.l == (1, 1):
        d1, d2 = sys.d
        return [((-1, d2 * sys.sigma - 1), "sylvester"), ((d1 * sys.sigma - 1, -1), "sylvester")]
    return []


def unmixed_pure_exists(sys: SystemData) -> bool:
    if any(v != 1 for v in sys.s):
        raise ValueError("unmixed_pure_exists requires s = (1, ..., 1)")
    return all(min(lk, dk) == 1 for lk, dk in zip(sys.l, sys.d))


def homogeneous_interval(sys: SystemData) -> tuple[int, int]:
    """Open interval (lo, hi) whose integers are the determinantal m when r = 1."""
    if sys.r != 1:
        raise ValueError("homogeneous_interval needs r = 1")
    n, d, s = sys.n, sys.d[0], sys.s
    return d * _ssum(s, 2, n) - n - 1, d * (s[0] + s[1])


@dataclass
class MinDimReport:
    min_dim: int
    argmins: list[tuple[int, ...]]
    centers: list[tuple[Fraction, ...]]
    distances: dict  # argmin -> L-infinity distance to the nearest box center

    def to_dict(self) -> dict:
        return {
            "min_dim": self.min_dim,
            "argmins": [list(m) for m in self.argmins],
            "centers": [[str(c) for c in ctr] for ctr in self.centers],
            "distances": {",".join(map(str, m)): str(v) for m, v in self.distances.items()},
        }


def min_dim_probe(sys: SystemData) -> MinDimReport:
    """Report where minimum-dimension formulae sit relative to box centers.

    Purely observational; nothing downstream relies on the outcome.
    """
    vecs = enumerate_det_vectors(sys)
    if not vecs:
        raise ValueError("data is not determinantal")
    best = min(dim for _, dim in vecs)
    argmins = [m for m, dim in vecs if dim == best]
    centers = [b.center() for b in det_boxes(sys)]
    dist = {m: min(max(abs(Fraction(v) - c) for v, c in zip(m, ctr)) for ctr in centers)
            for m in argmins}
    return MinDimReport(best, argmins, centers, dist)

