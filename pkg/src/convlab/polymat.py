"""Polynomial matrices over GF(q)[s].

A :class:`PolyMat` stores its coefficient matrices ``G_0, ..., G_d`` so that
``G(s) = sum_t G_t s^t``.  Scalar polynomials are little-endian lists of
field integers with no trailing zeros; the zero polynomial is ``[]`` and has
degree -1 here (never serialized).
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .gf import GF
from .matrix import DimensionError, Mat, rank, right_kernel_basis, solve


class PolyMatError(ValueError):
    pass


# -- scalar polynomials ------------------------------------------------------

Poly = list  # little-endian list[int]


def ptrim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pdeg(a: Sequence[int]) -> int:
    return len(ptrim(a)) - 1


def padd(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def pneg(F: GF, a: Sequence[int]) -> Poly:
    return [F.neg(x) for x in a]


def psub(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    return padd(F, a, pneg(F, b))


def pmul(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pscale(F: GF, c: int, a: Sequence[int]) -> Poly:
    return ptrim([F.mul(c, x) for x in a])


def pdivmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly]:
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = ptrim(a)
    quo = [0] * max(len(rem) - len(b) + 1, 0)
    inv_lead = F.inv(b[-1])
    while len(rem) >= len(b):
        c = F.mul(rem[-1], inv_lead)
        sh = len(rem) - len(b)
        quo[sh] = c
        for i, x in enumerate(b):
            rem[sh + i] = F.sub(rem[sh + i], F.mul(c, x))
        rem = ptrim(rem)
    return ptrim(quo), rem


def pgcd(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    """Monic gcd (``[]`` when both are zero)."""
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    if not a:
        return []
    return pscale(F, F.inv(a[-1]), a)


def pshift(a: Sequence[int], e: int) -> Poly:
    return [0] * e + list(a) if a else []


def pdet(F: GF, entries: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a small square polynomial matrix by Laplace expansion."""
    n = len(entries)
    if n == 0:
        return [1]
    if n == 1:
        return ptrim(entries[0][0])
    total: Poly = []
    for j in range(n):
        a = entries[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = pmul(F, a, pdet(F, minor))
        total = psub(F, total, term) if j % 2 else padd(F, total, term)
    return total


# -- polynomial matrices -------------------------------------------------------

class PolyMat:
    """``n x k`` polynomial matrix stored by coefficient matrices."""

    __slots__ = ("field", "n", "k", "coeffs")

    def __init__(self, field: GF, n: int, k: int, coeffs: Sequence[Mat]):
        self.field = field
        self.n = n
        self.k = k
        coeffs = list(coeffs)
        for G in coeffs:
            if G.shape != (n, k) or G.field != field:
                raise DimensionError(f"coefficient {G.shape} does not fit {n}x{k} over {field!r}")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            coeffs = [Mat(field, n, k)]
        self.coeffs = coeffs

    @classmethod
    def from_entries(cls, F: GF, entries: Sequence[Sequence[Sequence[int]]]) -> PolyMat:
        """Build from an ``n x k`` grid of little-endian scalar polynomials."""
        n = len(entries)
        k = len(entries[0]) if n else 0
        d = max((len(e) for row in entries for e in row), default=1)
        d = max(d, 1)
        mats = []
        for t in range(d):
            mats.append(Mat(F, n, k, [[e[t] if t < len(e) else 0 for e in row] for row in entries]))
        return cls(F, n, k, mats)

    @classmethod
    def constant(cls, M: Mat) -> PolyMat:
        return cls(M.field, M.rows, M.cols, [M])

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def entry(self, i: int, j: int) -> Poly:
        return ptrim([G.data[i][j] for G in self.coeffs])

    def entries(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.k)] for i in range(self.n)]

    def column(self, j: int) -> PolyMat:
        return PolyMat(self.field, self.n, 1, [Mat(self.field, self.n, 1, [[r[j]] for r in G.data]) for G in self.coeffs])

    def coeff(self, t: int) -> Mat:
        if 0 <= t < len(self.coeffs):
            return self.coeffs[t]
        return Mat(self.field, self.n, self.k)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyMat)
            and self.field == other.field
            and (self.n, self.k) == (other.n, other.k)
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"PolyMat({self.n}x{self.k}, deg {self.degree}, {self.entries()})"


def hcat(cols: Sequence[PolyMat]) -> PolyMat:
    parts = [c.entries() for c in cols]
    ents = [sum((p[i] for p in parts), []) for i in range(cols[0].n)]
    return PolyMat.from_entries(cols[0].field, ents)


def column_degrees(G: PolyMat) -> list[int]:
    degs = []
    for j in range(G.k):
        d = max(pdeg(G.entry(i, j)) for i in range(G.n))
        if d < 0:
            raise PolyMatError(f"column {j + 1} is zero; its degree is undefined")
        degs.append(d)
    return degs


def high_order_matrix(G: PolyMat) -> Mat:
    degs = column_degrees(G)
    return Mat(G.field, G.n, G.k, [[G.coeffs[degs[j]].data[i][j] for j in range(G.k)] for i in range(G.n)])


def maximal_minors(G: PolyMat) -> list[Poly]:
    F = G.field
    ents = G.entries()
    return [pdet(F, [ents[i] for i in rows]) for rows in itertools.combinations(range(G.n), G.k)]


def _require_full_rank(G: PolyMat) -> list[Poly]:
    minors = maximal_minors(G)
    if not any(minors):
        raise PolyMatError("generator matrix is not of full column rank")
    return minors


def code_degree(G: PolyMat) -> int:
    """Largest degree of a k x k minor."""
    return max(pdeg(m) for m in _require_full_rank(G))


def minors_gcd_is_unit(G: PolyMat) -> bool:
    F = G.field
    g: Poly = []
    for m in _require_full_rank(G):
        g = pgcd(F, g, m)
        if len(g) == 1:
            return True
    return len(g) == 1


def is_minimal(G: PolyMat) -> bool:
    try:
        return rank(high_order_matrix(G)) == G.k
    except PolyMatError:
        return False


def minimalize(G: PolyMat) -> PolyMat:
    """Column-reduce G by unimodular column operations until G_inf has rank k.

    Each step takes a kernel vector a of G_inf and replaces the
    highest-degree column j0 in its support by
    sum_j a_j s^(d_j0 - d_j) col_j, which lowers deg col_j0.
    """
    F = G.field
    _require_full_rank(G)
    ents = G.entries()
    cols = [[ents[i][j] for i in range(G.n)] for j in range(G.k)]
    while True:
        cur = PolyMat.from_entries(F, [[cols[j][i] for j in range(G.k)] for i in range(G.n)])
        degs = column_degrees(cur)
        Ginf = high_order_matrix(cur)
        ker = right_kernel_basis(Ginf)
        if not ker:
            return cur
        a = ker[0].col(0)
        support = [j for j in range(G.k) if a[j]]
        j0 = max(support, key=lambda j: (degs[j], j))
        new = [[] for _ in range(G.n)]
        for j in support:
            sh = degs[j0] - degs[j]
            for i in range(G.n):
                new[i] = padd(F, new[i], pshift(pscale(F, a[j], cols[j][i]), sh))
        cols[j0] = new
        if all(not e for e in new):
            raise PolyMatError("generator matrix is not of full column rank")


def reverse(G: PolyMat) -> PolyMat:
    """Replace each entry p_ij(s) by s^(d_j) p_ij(1/s), d_j the column degree."""
    if not is_minimal(G):
        raise PolyMatError("reverse needs a minimal generator matrix")
    if not minors_gcd_is_unit(G):
        raise PolyMatError("reverse needs a generator of a direct summand")
    F = G.field
    degs = column_degrees(G)
    ents = []
    for i in range(G.n):
        row = []
        for j in range(G.k):
            e = G.entry(i, j)
            e = e + [0] * (degs[j] + 1 - len(e))
            row.append(ptrim(e[::-1]))
        ents.append(row)
    return PolyMat.from_entries(F, ents)


def polymat_mul(G: PolyMat, U: PolyMat) -> PolyMat:
    if G.k != U.n or G.field != U.field:
        raise DimensionError(f"cannot multiply {G.n}x{G.k} by {U.n}x{U.k}")
    F = G.field
    from .matrix import mul
    out = []
    for t in range(len(G.coeffs) + len(U.coeffs) - 1):
        acc = Mat(F, G.n, U.k)
        for a in range(max(0, t - len(U.coeffs) + 1), min(t, len(G.coeffs) - 1) + 1):
            acc = acc + mul(G.coeffs[a], U.coeffs[t - a])
        out.append(acc)
    return PolyMat(F, G.n, U.k, out)


def polymat_mul_vec(G: PolyMat, u: PolyMat) -> PolyMat:
    if u.k != 1:
        raise DimensionError("message must be a k x 1 polynomial vector")
    return polymat_mul(G, u)


def truncate(v: PolyMat, j: int) -> list[Mat]:
    """Coefficient vectors v_0..v_j (zero-padded past deg v)."""
    return [v.coeff(t) for t in range(j + 1)]


def vec_from_coeffs(F: GF, vectors: Sequence[Sequence[int]]) -> PolyMat:
    """Polynomial column vector sum_t vectors[t] s^t."""
    n = len(vectors[0])
    return PolyMat(F, n, 1, [Mat.column(F, v) for v in vectors])


def reverse_vec(v: PolyMat, d: int | None = None) -> PolyMat:
    """s^d v(1/s); d defaults to deg v."""
    if d is None:
        d = v.degree
    coeffs = [v.coeff(t) for t in range(d + 1)]
    return PolyMat(v.field, v.n, v.k, coeffs[::-1])


def solve_message(G: PolyMat, v: PolyMat) -> PolyMat | None:
    """Find u with G u = v, or None.

    G must be minimal: then deg u_j <= deg v - d_j (predictable degrees), so
    the coefficients of u solve a finite linear system over the field.
    """
    if not is_minimal(G):
        raise PolyMatError("solve_message needs a minimal generator matrix")
    F = G.field
    if v.degree < 0:
        return PolyMat(F, G.k, 1, [Mat(F, G.k, 1)])
    degs = column_degrees(G)
    dv = v.degree
    unknowns = [(j, e) for j in range(G.k) for e in range(dv - degs[j] + 1)]
    if not unknowns:
        return None
    rows = []
    rhs = []
    for t in range(dv + 1):
        for i in range(G.n):
            rows.append([G.coeff(t - e).data[i][j] if t - e >= 0 else 0 for (j, e) in unknowns])
            rhs.append([v.coeff(t).data[i][0]])
    x = solve(Mat(F, len(rows), len(unknowns), rows), Mat(F, len(rhs), 1, rhs))
    if x is None:
        return None
    uc = [[0] * G.k for _ in range(dv + 1)]
    for (j, e), val in zip(unknowns, x.col(0)):
        uc[e][j] = val
    return vec_from_coeffs(F, uc)


def in_code(G: PolyMat, v: PolyMat) -> bool:
    return solve_message(G, v) is not None
