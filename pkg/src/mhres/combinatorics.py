"""Integer combinatorics of Weyman complexes for scaled multihomogeneous systems.

A system of type (l, d, s) lives on P^{l_1} x ... x P^{l_r}; polynomial f_i
has multidegree s_i * d.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import comb, factorial, gcd, prod


class InvalidSystemError(ValueError):
    """Raised for data (l, d, s) that does not describe a scaled system."""


@dataclass(frozen=True)
class SystemData:
    l: tuple[int, ...]
    d: tuple[int, ...]
    s: tuple[int, ...]
    n: int = field(init=False)
    r: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", sum(self.l))
        object.__setattr__(self, "r", len(self.l))

    @property
    def sigma(self) -> int:
        """Sum of all scale factors."""
        return sum(self.s)

    def groups(self) -> list[range]:
        """Flat (1-based) variable indices of each group."""
        out, start = [], 1
        for lk in self.l:
            out.append(range(start, start + lk))
            start += lk
        return out

    def to_dict(self) -> dict:
        return {"l": list(self.l), "d": list(self.d), "s": list(self.s)}


def validate_system(l, d, s) -> SystemData:
    """Check the data and build a :class:`SystemData`; never normalizes."""
    l, d, s = tuple(int(v) for v in l), tuple(int(v) for v in d), tuple(int(v) for v in s)
    if not l:
        raise InvalidSystemError("l must contain at least one group")
    if len(d) != len(l):
        raise InvalidSystemError(f"length mismatch: len(d)={len(d)} but len(l)={len(l)}")
    if any(v <= 0 for v in l):
        raise InvalidSystemError(f"group sizes l must be positive, got {l}")
    if any(v <= 0 for v in d):
        raise InvalidSystemError(f"base degrees d must be positive, got {d}")
    if any(v <= 0 for v in s):
        raise InvalidSystemError(f"scale factors s must be positive, got {s}")
    n = sum(l)
    if len(s) != n + 1:
        raise InvalidSystemError(f"length mismatch: len(s)={len(s)} but sum(l)+1={n + 1}")
    if list(s) != sorted(s):
        raise InvalidSystemError(f"s must be sorted nondecreasing, got {s}")
    g = reduce(gcd, s)
    if g != 1:
        raise InvalidSystemError(f"gcd(s)={g}; scale factors must be coprime")
    return SystemData(l, d, s)


def critical_degree(sys: SystemData) -> tuple[int, ...]:
    """rho_k = d_k * sum(s) - l_k - 1."""
    return tuple(dk * sys.sigma - lk - 1 for lk, dk in zip(sys.l, sys.d))


def dual_vector(sys: SystemData, m) -> tuple[int, ...]:
    """The vector rho - m; K_nu(m) is dual to K_{1-nu}(rho - m)."""
    return tuple(rk - mk for rk, mk in zip(critical_degree(sys), m))


def bott_dim(group_size: int, twist: int) -> tuple[int | None, int]:
    """Return (cohomology index, dimension) of H^*(P^l, O(twist)).

    Exactly one of H^0 (twist >= 0), H^l (twist < -l) is nonzero, otherwise
    everything vanishes and ``(None, 0)`` is returned.
    """
    if twist >= 0:
        return 0, comb(twist + group_size, group_size)
    if twist < -group_size:
        return group_size, comb(-twist - 1, group_size)
    return None, 0


def coh_dim(sys: SystemData, twist) -> tuple[int | None, int]:
    """Kunneth + Bott: the unique nonzero H^q(twist) on the product space, if any."""
    q, dim = 0, 1
    for lk, a in zip(sys.l, twist):
        j, dk = bott_dim(lk, a)
        if dk == 0:
            return None, 0
        q += j
        dim *= dk
    return q, dim


def twist_of(sys: SystemData, m, z: int) -> tuple[int, ...]:
    return tuple(mk - z * dk for mk, dk in zip(m, sys.d))


def sum_multiplicities(sys: SystemData, p: int) -> Counter:
    """Map each sum of p distinct entries of s to the number of index sets realizing it."""
    if not 0 <= p <= sys.n + 1:
        raise ValueError(f"p={p} outside [0, {sys.n + 1}]")
    return Counter(sum(sys.s[i] for i in idx) for idx in combinations(range(sys.n + 1), p))


def sum_set(sys: SystemData, p: int) -> list[int]:
    """S_p: sorted distinct sums of p entries of s (S_0 = [0])."""
    return sorted(sum_multiplicities(sys, p))


def pk_interval(sys: SystemData, m, k: int) -> list[int]:
    """P_k = (m_k/d_k, (m_k+l_k)/d_k] intersected with the integers; k is 1-based."""
    mk, lk, dk = m[k - 1], sys.l[k - 1], sys.d[k - 1]
    lo = mk // dk + 1  # smallest integer > m_k/d_k
    hi = (mk + lk) // dk
    return list(range(lo, hi + 1))


def pk_below(sys: SystemData, m, k: int, z: int) -> bool:
    """P_k < z, i.e. z > (m_k + l_k)/d_k; meaningful even for empty P_k."""
    return Fraction(z) > Fraction(m[k - 1] + sys.l[k - 1], sys.d[k - 1])


def pk_above(sys: SystemData, m, k: int, z: int) -> bool:
    """P_k > z, i.e. z <= m_k/d_k."""
    return Fraction(z) <= Fraction(m[k - 1], sys.d[k - 1])


def q_of(sys: SystemData, m, z: int) -> int:
    """q(z) = sum of l_k over groups with P_k < z."""
    return sum(sys.l[k - 1] for k in range(1, sys.r + 1) if pk_below(sys, m, k, z))


def in_some_pk(sys: SystemData, m, z: int) -> bool:
    return any(not pk_below(sys, m, k, z) and not pk_above(sys, m, k, z)
               for k in range(1, sys.r + 1))


def knp_support(sys: SystemData, m, p: int) -> list[tuple[int, int, int, int]]:
    """Nonzero parts of K_{nu,p}: tuples (z, nu, dim of H^{q(z)}(m - z d), multiplicity)."""
    out = []
    for z, mult in sorted(sum_multiplicities(sys, p).items()):
        if in_some_pk(sys, m, z):
            continue
        _, dim = coh_dim(sys, twist_of(sys, m, z))
        out.append((z, p - q_of(sys, m, z), dim, mult))
    return out


def multinomial(n: int, parts) -> int:
    return factorial(n) // prod(factorial(p) for p in parts)


def resultant_degrees(sys: SystemData) -> tuple[tuple[int, ...], int]:
    """Degree of the resultant in the coefficients of each f_i, and the total."""
    base = multinomial(sys.n, sys.l) * prod(dk ** lk for lk, dk in zip(sys.l, sys.d))
    ps = prod(sys.s)
    per = tuple(base * ps // si for si in sys.s)
    return per, sum(per)
