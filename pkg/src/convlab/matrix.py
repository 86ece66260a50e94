"""Dense exact matrices over a finite field.

Entries are field integers (see :mod:`convlab.gf`).  Elimination always
takes the first nonzero pivot and never swaps columns, so the pivot
columns reported by :func:`rref` are the true leading columns.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gf import GF


class DimensionError(ValueError):
    pass


class Mat:
    """An immutable rows x cols matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: GF, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = tuple((0,) * cols for _ in range(rows))
        else:
            self.data = tuple(tuple(r) for r in data)
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise DimensionError(f"data does not match shape {rows}x{cols}")

    @classmethod
    def from_rows(cls, field: GF, rows: Sequence[Sequence[int]], cols: int | None = None) -> Mat:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            for a in r:
                field.check(a)
        return cls(field, len(rows), cols, rows)

    @classmethod
    def column(cls, field: GF, values: Sequence[int]) -> Mat:
        return cls(field, len(values), 1, [[v] for v in values])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(a) for a in r) for r in self.data)
        return f"Mat({self.rows}x{self.cols} over {self.field!r}: [{body}])"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def col(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    @property
    def T(self) -> Mat:
        return Mat(self.field, self.cols, self.rows, list(zip(*self.data)) if self.rows else [() for _ in range(self.cols)])

    def __add__(self, other: Mat) -> Mat:
        _same(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Mat(self.field, self.rows, self.cols,
                   [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> Mat:
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, [[neg(a) for a in r] for r in self.data])

    def __sub__(self, other: Mat) -> Mat:
        return self + (-other)

    def __matmul__(self, other: Mat) -> Mat:
        return mul(self, other)

    def scale(self, c: int) -> Mat:
        m = self.field.mul
        return Mat(self.field, self.rows, self.cols, [[m(c, a) for a in r] for r in self.data])


def _same(a: Mat, b: Mat) -> None:
    if a.field != b.field:
        raise DimensionError(f"mixed fields {a.field!r} and {b.field!r}")


def zeros(field: GF, rows: int, cols: int) -> Mat:
    return Mat(field, rows, cols)


def identity(field: GF, n: int) -> Mat:
    return Mat(field, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mul(A: Mat, B: Mat) -> Mat:
    _same(A, B)
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    F = A.field
    add, m = F.add, F.mul
    Bt = list(zip(*B.data)) if B.rows else [()] * B.cols
    out = []
    for r in A.data:
        row = []
        for c in Bt:
            s = 0
            for a, b in zip(r, c):
                if a and b:
                    s = add(s, m(a, b))
            row.append(s)
        out.append(row)
    return Mat(F, A.rows, B.cols, out)


def mat_pow(A: Mat, e: int) -> Mat:
    if A.rows != A.cols:
        raise DimensionError("mat_pow needs a square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    out, base = identity(A.field, A.rows), A
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def hstack(mats: Sequence[Mat]) -> Mat:
    F = mats[0].field
    rows = mats[0].rows
    for M in mats:
        _same(mats[0], M)
        if M.rows != rows:
            raise DimensionError("hstack needs equal row counts")
    data = [sum((list(M.data[i]) for M in mats), []) for i in range(rows)]
    return Mat(F, rows, sum(M.cols for M in mats), data)


def vstack(mats: Sequence[Mat]) -> Mat:
    F = mats[0].field
    cols = mats[0].cols
    for M in mats:
        _same(mats[0], M)
        if M.cols != cols:
            raise DimensionError("vstack needs equal column counts")
    data = [r for M in mats for r in M.data]
    return Mat(F, len(data), cols, data)


def block(blocks: Sequence[Sequence[Mat]]) -> Mat:
    return vstack([hstack(list(row)) for row in blocks])


def submatrix(M: Mat, row_idx: Sequence[int], col_idx: Sequence[int]) -> Mat:
    """Rows and columns are 1-based, strictly increasing."""
    _check_index(row_idx, M.rows, "row")
    _check_index(col_idx, M.cols, "column")
    return Mat(M.field, len(row_idx), len(col_idx),
               [[M.data[i - 1][j - 1] for j in col_idx] for i in row_idx])


def _check_index(idx: Sequence[int], bound: int, what: str) -> None:
    prev = 0
    for i in idx:
        if not isinstance(i, int) or i <= prev or i > bound:
            raise IndexError(f"{what} indices {list(idx)} not strictly increasing within 1..{bound}")
        prev = i


# -- elimination -------------------------------------------------------------

def _eliminate(F: GF, rows: list[list[int]], ncols: int, reduced: bool) -> tuple[list[int], int]:
    """In-place row reduction. Returns (pivot columns, number of row swaps)."""
    add, m, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots: list[int] = []
    swaps = 0
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            swaps += 1
        prow = rows[r]
        if reduced:
            ic = inv(prow[c])
            prow = rows[r] = [m(ic, a) for a in prow]
            targets = range(nrows)
        else:
            ic = inv(prow[c])
            targets = range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                f = neg(m(f, ic)) if not reduced else neg(f)
                rows[i] = [add(a, m(f, b)) if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots, swaps


def rank(M: Mat) -> int:
    rows = [list(r) for r in M.data]
    pivots, _ = _eliminate(M.field, rows, M.cols, reduced=False)
    return len(pivots)


def rank_rows(F: GF, rows: Iterable[Sequence[int]], ncols: int) -> int:
    """Rank of a list of raw rows; avoids building a Mat in hot loops."""
    work = [list(r) for r in rows]
    return len(_eliminate(F, work, ncols, reduced=False)[0])


def det(M: Mat) -> int:
    if M.rows != M.cols:
        raise DimensionError(f"det of non-square {M.shape} matrix")
    F = M.field
    rows = [list(r) for r in M.data]
    pivots, swaps = _eliminate(F, rows, M.cols, reduced=False)
    if len(pivots) < M.rows:
        return 0
    d = 1
    for i in range(M.rows):
        d = F.mul(d, rows[i][i])
    return F.neg(d) if swaps % 2 else d


def rref(M: Mat) -> tuple[Mat, list[int]]:
    rows = [list(r) for r in M.data]
    pivots, _ = _eliminate(M.field, rows, M.cols, reduced=True)
    return Mat(M.field, M.rows, M.cols, rows), pivots


def right_kernel_basis(M: Mat) -> list[Mat]:
    """Basis of {k : M k = 0}, one column vector per free column."""
    F = M.field
    R, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.data[i][f])
        basis.append(Mat.column(F, v))
    return basis


def kernel_rows(M: Mat) -> list[list[int]]:
    return [b.col(0) for b in right_kernel_basis(M)]


def solve_left(R: Mat, v: Mat) -> Mat | None:
    """Return a row x with x @ R == v, or None when v is not in the row space."""
    _same(R, v)
    if v.rows != 1 or v.cols != R.cols:
        raise DimensionError(f"solve_left expects a 1x{R.cols} row, got {v.shape}")
    x = solve(R.T, v.T)
    return None if x is None else x.T


def solve(A: Mat, b: Mat) -> Mat | None:
    """One solution of A x = b (b may have several columns), or None."""
    _same(A, b)
    if b.rows != A.rows:
        raise DimensionError(f"solve: {A.shape} vs right-hand side {b.shape}")
    F = A.field
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, b.data)]
    pivots, _ = _eliminate(F, aug, A.cols + b.cols, reduced=True)
    if any(p >= A.cols for p in pivots):
        return None
    x = [[0] * b.cols for _ in range(A.cols)]
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][A.cols:]
    return Mat(F, A.cols, b.cols, x)


def cofactor_det(M: Mat) -> int:
    """Laplace expansion along the first row; test oracle for :func:`det`."""
    if M.rows != M.cols:
        raise DimensionError("cofactor_det of non-square matrix")
    F = M.field
    n = M.rows
    if n == 0:
        return 1
    if n == 1:
        return M.data[0][0]
    total = 0
    for j in range(n):
        a = M.data[0][j]
        if not a:
            continue
        minor = Mat(F, n - 1, n - 1, [r[:j] + r[j + 1:] for r in M.data[1:]])
        term = F.mul(a, cofactor_det(minor))
        total = F.sub(total, term) if j % 2 else F.add(total, term)
    return total


def random_mat(F: GF, rows: int, cols: int, rng) -> Mat:
    return Mat(F, rows, cols, [[rng.randrange(F.q) for _ in range(cols)] for _ in range(rows)])
