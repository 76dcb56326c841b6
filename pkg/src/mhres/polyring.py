"""Sparse polynomials over Q with structured variable names.

Variables are tuples ``(kind, a, b)``:

* ``('x', k, j)`` / ``('y', k, j)`` -- coordinate j of group k (1-based);
  j = 0 is the homogenizing coordinate, used only by the Morley form.
* ``('c', i, t)`` -- the t-th generic coefficient of f_i.

A polynomial in the x/y variables whose coefficients are polynomials in the
``c`` variables is therefore just a :class:`Poly`; :meth:`Poly.split` recovers
the two-level view.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import reduce
from itertools import product
from string import ascii_lowercase

from .combinatorics import SystemData

_TOP = (("~",), 0)  # sorts after every (var, -exp) pair


class NonExactDivisionError(ArithmeticError):
    pass


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def mono_div(a: tuple, b: tuple):
    """a / b as a monomial, or None if b does not divide a."""
    acc = dict(a)
    for v, e in b:
        left = acc.get(v, 0) - e
        if left < 0:
            return None
        if left:
            acc[v] = left
        else:
            del acc[v]
    return tuple(sorted(acc.items()))


def lex_key(mono: tuple):
    """Sort key: smaller key means lexicographically larger monomial."""
    return tuple((v, -e) for v, e in mono) + (_TOP,)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items() if isinstance(terms, dict) else terms:
                if c:
                    self.terms[mono] = self.terms.get(mono, 0) + Fraction(c)
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v, exp: int = 1) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        return cls({((v, exp),) if exp else (): 1})

    @classmethod
    def coerce(cls, other) -> "Poly":
        return other if isinstance(other, Poly) else cls.const(other)

    def _raw(self, terms: dict) -> "Poly":
        p = Poly()
        p.terms = terms
        return p

    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Fraction(other)
            if not other:
                return Poly()
            return self._raw({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, pred) -> int:
        """Largest total degree over variables satisfying ``pred``."""
        return max((sum(e for v, e in m if pred(v)) for m in self.terms), default=-1)

    def leading(self):
        m = min(self.terms, key=lex_key)
        return m, self.terms[m]

    def split(self, pred) -> dict:
        """Group terms by their part in variables satisfying ``pred``.

        Returns {monomial in pred-variables: Poly in the remaining variables}.
        """
        out = {}
        for m, c in self.terms.items():
            inner = tuple(t for t in m if pred(t[0]))
            outer = tuple(t for t in m if not pred(t[0]))
            out.setdefault(inner, {})[outer] = c
        return {k: self._raw(v) for k, v in out.items()}

    def coef(self, mono: tuple, pred=None) -> "Poly":
        """Coefficient of ``mono`` where ``pred`` selects the 'monomial' variables.

        By default these are the x/y variables, so the result is a polynomial
        in the generic coefficients.
        """
        pred = pred or is_xy
        mono = tuple(sorted(mono))
        out = {}
        for m, c in self.terms.items():
            if tuple(t for t in m if pred(t[0])) == mono:
                out[tuple(t for t in m if not pred(t[0]))] = c
        return self._raw(out)

    def substitute(self, mapping: dict) -> "Poly":
        """Replace variables by polynomials (or numbers)."""
        mapping = {v: Poly.coerce(p) for v, p in mapping.items()}
        cache: dict = {}
        out = Poly()
        acc: dict = {}
        for m, c in self.terms.items():
            keep, factor = [], None
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    factor = cache[key] if factor is None else factor * cache[key]
                else:
                    keep.append((v, e))
            if factor is None:
                acc[m] = acc.get(m, 0) + c
            else:
                out = out + factor * Poly({tuple(keep): c})
        return out + self._raw({m: c for m, c in acc.items() if c})

    def rename(self, mapping: dict) -> "Poly":
        """Variable-to-variable renaming (cheaper than substitute)."""
        out = {}
        for m, c in self.terms.items():
            acc = {}
            for v, e in m:
                w = mapping.get(v, v)
                acc[w] = acc.get(w, 0) + e
            key = tuple(sorted(acc.items()))
            out[key] = out.get(key, 0) + c
        return self._raw({m: c for m, c in out.items() if c})

    def evaluate(self, assignment: dict) -> "Poly":
        """Substitute numbers for variables; unassigned variables are kept."""
        out = {}
        for m, c in self.terms.items():
            keep = []
            for v, e in m:
                if v in assignment:
                    c = c * Fraction(assignment[v]) ** e
                else:
                    keep.append((v, e))
            if c:
                key = tuple(keep)
                out[key] = out.get(key, 0) + c
        return self._raw({m: c for m, c in out.items() if c})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> dict:
        return {json.dumps([[list(v), e] for v, e in m]): str(c)
                for m, c in sorted(self.terms.items(), key=lambda t: lex_key(t[0]))}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        return cls({tuple((tuple(v), e) for v, e in json.loads(k)): Fraction(c)
                    for k, c in data.items()})


def is_xy(v) -> bool:
    return v[0] in ("x", "y")


def is_coef(v) -> bool:
    return v[0] == "c"


def X(k: int, j: int) -> tuple:
    return ("x", k, j)


def Y(k: int, j: int) -> tuple:
    return ("y", k, j)


def C(i: int, t: int) -> tuple:
    return ("c", i, t)


# -- display -----------------------------------------------------------------

def coef_letter(i: int) -> str:
    return ascii_lowercase[i] if i < 26 else f"f{i}_"


def var_name(v, groups=None) -> str:
    kind, a, b = v
    if kind == "c":
        return f"{coef_letter(a)}{b}"
    if b == 0:
        return f"{kind}{a}_0"
    if groups is not None:
        return f"{kind}{groups[a - 1][b - 1]}"
    return f"{kind}{a}_{b}"


def format_mono(m: tuple, groups=None) -> str:
    parts = []
    for v, e in m:
        name = var_name(v, groups)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, groups=None) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in sorted(p.terms.items(), key=lambda t: (sum(e for _, e in t[0]), lex_key(t[0]))):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_mono(m, groups)
        if not body:
            txt = str(a)
        elif a == 1:
            txt = body
        else:
            txt = f"{a}*{body}"
        out.append((sign, txt))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, txt in out[1:]:
        s += f" {sign} {txt}"
    return s


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]\d+(?:_\d+)?|f\d+_\d+)|(\S))")


def _parse_name(name: str, groups=None) -> tuple:
    if name[0] in "xy" and "_" in name:
        k, j = name[1:].split("_")
        return (name[0], int(k), int(j))
    if name[0] in "xy" and groups is not None:
        flat = int(name[1:])
        for k, g in enumerate(groups, start=1):
            if flat in g:
                return (name[0], k, flat - g.start + 1)
        raise ValueError(f"variable {name} is outside every group")
    if name[0] == "f":
        i, t = name[1:].split("_")
        return ("c", int(i), int(t))
    return ("c", ascii_lowercase.index(name[0]), int(name[1:]))


def parse_poly(text: str, groups=None) -> Poly:
    """Inverse of :func:`format_poly` (sums of signed products, ``^`` for powers)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            break
        tokens.append(mt.groups())
        pos = mt.end()
    out, term, sign = Poly(), None, 1
    i = 0
    while i < len(tokens):
        num, name, op = tokens[i]
        if op in ("+", "-"):
            if term is not None:
                out += term * sign
                term = None
            sign = 1 if op == "+" else -1
        elif op == "*":
            pass
        elif num is not None or name is not None:
            factor = Poly.const(Fraction(num)) if num is not None else Poly.var(_parse_name(name, groups))
            if i + 2 < len(tokens) and tokens[i + 1][2] == "^":
                factor = factor ** int(tokens[i + 2][0])
                i += 2
            term = factor if term is None else term * factor
        else:
            raise ValueError(f"cannot parse {text!r} near {op!r}")
        i += 1
    if term is not None:
        out += term * sign
    return out


# -- monomial supports and generic systems ------------------------------------

def group_monomials(size: int, deg: int) -> list[tuple[int, ...]]:
    """Exponent vectors in ``size`` variables of total degree <= deg.

    Ordered lexicographically, first variable most significant, ascending.
    """
    if deg < 0:
        return []
    return sorted(e for e in product(range(deg + 1), repeat=size) if sum(e) <= deg)


def _shell_key(idx: tuple[int, ...]):
    top = max(idx)
    at_top = tuple(k for k, v in enumerate(idx) if v == top)
    rest = tuple(v for v in idx if v != top)
    return (top, len(at_top), at_top, rest)


def support(sys: SystemData, degs) -> list[tuple[tuple[int, ...], ...]]:
    """Monomials of multidegree <= degs as per-group exponent tuples.

    Groups are combined in shells of growing per-group index, which
    reproduces the labelling a_0, a_1, ... used in the reference examples.
    """
    per_group = [group_monomials(lk, dk) for lk, dk in zip(sys.l, degs)]
    idx = sorted(product(*(range(len(g)) for g in per_group)), key=_shell_key)
    return [tuple(per_group[k][i] for k, i in enumerate(t)) for t in idx]


def mono_from_groups(parts, kind: str = "x") -> tuple:
    out = []
    for k, e in enumerate(parts, start=1):
        for j, ej in enumerate(e, start=1):
            if ej:
                out.append(((kind, k, j), ej))
    return tuple(sorted(out))


def system_support(sys: SystemData, i: int) -> list[tuple]:
    return [mono_from_groups(g) for g in support(sys, [sys.s[i] * dk for dk in sys.d])]


def make_generic_system(sys: SystemData) -> list[Poly]:
    """f_0..f_n with full support and one fresh indeterminate per coefficient."""
    return [Poly({mono_mul(mono, ((C(i, t), 1),)): 1 for t, mono in enumerate(system_support(sys, i))})
            for i in range(sys.n + 1)]


def relabel_coefficients(sys: SystemData, mono_map) -> dict:
    """Coefficient renaming induced by a map on support monomials.

    ``mono_map(i, parts)`` takes f_i's monomial as per-group exponent tuples
    and returns its image in the same form.  The result maps each c-variable
    to the c-variable that labels the image monomial.
    """
    out = {}
    for i in range(sys.n + 1):
        degs = [sys.s[i] * dk for dk in sys.d]
        sup = support(sys, degs)
        index = {parts: t for t, parts in enumerate(sup)}
        for t, parts in enumerate(sup):
            image = tuple(tuple(e) for e in mono_map(i, parts))
            if image not in index:
                raise ValueError(f"image of monomial {parts} of f{i} is outside the support")
            out[C(i, t)] = C(i, index[image])
    return out


def swap_groups(sys: SystemData, k1: int, k2: int) -> dict:
    """Coefficient renaming for exchanging two groups of equal size and degree."""
    if sys.l[k1 - 1] != sys.l[k2 - 1] or sys.d[k1 - 1] != sys.d[k2 - 1]:
        raise ValueError("only groups with equal size and degree can be exchanged")

    def swap(i, parts):
        parts = list(parts)
        parts[k1 - 1], parts[k2 - 1] = parts[k2 - 1], parts[k1 - 1]
        return parts
    return relabel_coefficients(sys, swap)


def swap_chart(sys: SystemData, k: int, j: int) -> dict:
    """Coefficient renaming for exchanging homogeneous coordinates x_{k,0} and x_{k,j}.

    Equivalently: dehomogenize group k at x_{k,j} instead of x_{k,0}.
    """
    def swap(i, parts):
        parts = [list(p) for p in parts]
        e = parts[k - 1]
        hom = sys.s[i] * sys.d[k - 1] - sum(e)
        e[j - 1], hom = hom, e[j - 1]
        return parts
    return relabel_coefficients(sys, swap)


def coefficient_vars(sys: SystemData) -> list[tuple]:
    return [C(i, t) for i in range(sys.n + 1) for t in range(len(system_support(sys, i)))]


def coef(f: Poly, mono) -> Poly:
    """Coefficient of an x/y monomial (zero if outside the support)."""
    return f.coef(tuple(mono))


def substitute_group(f: Poly, k: int, target: str = "y") -> Poly:
    """Rename every coordinate of group k to the ``target`` kind ('x' or 'y')."""
    source = "x" if target == "y" else "y"
    mapping = {v: (target, v[1], v[2]) for v in f.variables() if v[0] == source and v[1] == k}
    return f.rename(mapping)


def rename_vars(f: Poly, variables, target: str = "y") -> Poly:
    return f.rename({v: (target, v[1], v[2]) for v in variables})


# -- division and determinants ------------------------------------------------

def exact_divide(num: Poly, den: Poly) -> Poly:
    """Quotient of an exact division; raises if a remainder would be left."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = den.leading()
    rem = Poly(num.terms)
    quot = {}
    while rem:
        m, c = rem.leading()
        t = mono_div(m, lm)
        if t is None:
            raise NonExactDivisionError("divisor does not divide the numerator")
        qc = c / lc
        quot[t] = quot.get(t, 0) + qc
        rem = rem - den * Poly({t: qc})
    return Poly(quot)


def _det_laplace(M) -> Poly:
    n = len(M)
    # minors over the last rows, memoized by the set of columns still free
    cache = {}

    def minor(row: int, cols: tuple) -> Poly:
        if row == n:
            return Poly.const(1)
        key = cols
        if key in cache:
            return cache[key]
        total = Poly()
        for pos, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))


def _det_bareiss(M) -> Poly:
    A = [[Poly.coerce(e) for e in row] for row in M]
    n, sign, prev = len(A), 1, Poly.const(1)
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return Poly()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_divide(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def poly_matrix_det(M) -> Poly:
    """Exact determinant of a square matrix of polynomials."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n == 0:
        return Poly.const(1)
    M = [[Poly.coerce(e) for e in row] for row in M]
    return _det_laplace(M) if n <= 4 else _det_bareiss(M)


def sum_polys(ps) -> Poly:
    return reduce(lambda a, b: a + b, ps, Poly())
