"""Block Toeplitz matrices T_j and their trivial-rank-deficiency certificates.

Row and column indices of submatrices are 1-based, as in the combinatorial
criterion they feed: an (l+c) x l submatrix with rows i_1 < ... < i_{l+c}
and columns j_1 < ... < j_l is trivially rank deficient (TRD) iff
j_t > ceil(i_{t+c} / (n-k)) * k for some t.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .convcode import CodeParams
from .gf import GF, field_make
from .matrix import Mat, rank_rows

BIG_PRIME = 2 ** 31 - 1
DEFAULT_TRIALS = 16
DEFAULT_CEILING = 10 ** 7


class CertificationTooLarge(RuntimeError):
    def __init__(self, count: int, ceiling: int):
        super().__init__(f"{count} non-trivial submatrices exceed the ceiling {ceiling}")
        self.count = count
        self.ceiling = ceiling


@dataclass(frozen=True, eq=False)
class ToeplitzLT:
    blocks: tuple[Mat, ...]
    dense: Mat

    @property
    def j(self) -> int:
        return len(self.blocks) - 1


@dataclass(frozen=True)
class SubmatrixIndex:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.cols)

    @property
    def c(self) -> int:
        return len(self.rows) - len(self.cols)

    def format(self) -> str:
        return "witness rows {} cols {}".format(" ".join(map(str, self.rows)), " ".join(map(str, self.cols)))


def build_T(blocks: Sequence[Mat]) -> ToeplitzLT:
    """Lower block-triangular Toeplitz matrix with F_{s-t} in block (s, t)."""
    if not blocks:
        raise ValueError("need at least one block")
    F = blocks[0].field
    a, b = blocks[0].shape
    for B in blocks:
        if B.shape != (a, b) or B.field != F:
            raise ValueError("blocks must share one shape and field")
    J = len(blocks)
    data = [[0] * (J * b) for _ in range(J * a)]
    for s in range(J):
        for t in range(s + 1):
            blk = blocks[s - t].data
            for i in range(a):
                row = data[s * a + i]
                for jj in range(b):
                    row[t * b + jj] = blk[i][jj]
    return ToeplitzLT(tuple(blocks), Mat(F, J * a, J * b, data))


def _cap(i: int, params: CodeParams) -> int:
    # largest column that can be nonzero in row i
    return -(-i // params.nk) * params.k


def is_trd(idx: SubmatrixIndex, params: CodeParams) -> bool:
    c = idx.c
    if c < 0:
        raise ValueError("more columns than rows")
    return any(jt > _cap(idx.rows[t + c], params) for t, jt in enumerate(idx.cols))


def indeterminate(params: CodeParams, row: int, col: int) -> int | None:
    """Indeterminate number of dense entry (row, col), None for structural zeros."""
    nk, k = params.nk, params.k
    bs, s = divmod(row - 1, nk)
    bt, t = divmod(col - 1, k)
    if bt > bs:
        return None
    return (bs - bt) * nk * k + s * k + t + 1


def symbolic_zero_oracle(
    idx: SubmatrixIndex,
    params: CodeParams,
    trials: int = DEFAULT_TRIALS,
    big_field: GF | None = None,
    rng: random.Random | None = None,
) -> bool:
    """Randomized test that the submatrix is rank deficient as a matrix of
    indeterminates (shared across Toeplitz repeats).

    True means "rank < l at every one of ``trials`` random points".  A false
    True has probability at most (l / q)^trials.
    """
    F = big_field or field_make(BIG_PRIME)
    rng = rng or random.Random(0x5eed)
    l = idx.l  # noqa: E741
    for _ in range(trials):
        values: dict[int, int] = {}
        rows = []
        for i in idx.rows:
            row = []
            for jj in idx.cols:
                x = indeterminate(params, i, jj)
                if x is None:
                    row.append(0)
                else:
                    if x not in values:
                        values[x] = rng.randrange(F.q)
                    row.append(values[x])
            rows.append(row)
        if rank_rows(F, rows, l) == l:
            return False
    return True


def enumerate_submatrices(params: CodeParams, j: int, c: int, skip_trd: bool = False) -> Iterator[SubmatrixIndex]:
    """All (l+c) x l index pairs of T_j ordered by (l, rows, cols).

    With ``skip_trd`` the TRD ones are never generated: for fixed rows the
    columns are built left to right under the cap j_t <= ceil(i_{t+c}/(n-k)) k,
    so a violating prefix cuts off its whole subtree.
    """
    R, C = (j + 1) * params.nk, (j + 1) * params.k
    if not 0 <= c:
        raise ValueError("c must be nonnegative")
    lmax = min(R - c, C)
    for l in range(1, lmax + 1):  # noqa: E741
        for rows in itertools.combinations(range(1, R + 1), l + c):
            if not skip_trd:
                for cols in itertools.combinations(range(1, C + 1), l):
                    yield SubmatrixIndex(rows, cols)
                continue
            caps = [min(_cap(rows[t + c], params), C) for t in range(l)]
            yield from (SubmatrixIndex(rows, cols) for cols in _capped_cols(caps, 0, 0))


def _capped_cols(caps: Sequence[int], t: int, prev: int) -> Iterator[tuple[int, ...]]:
    if t == len(caps):
        yield ()
        return
    # leave room for the remaining strictly increasing columns
    for jt in range(prev + 1, caps[t] + 1):
        for rest in _capped_cols(caps, t + 1, jt):
            yield (jt,) + rest


def count_submatrices(params: CodeParams, j: int, c: int) -> int:
    R, C = (j + 1) * params.nk, (j + 1) * params.k
    return sum(math.comb(R, l + c) * math.comb(C, l) for l in range(1, min(R - c, C) + 1))


def count_nontrivial(params: CodeParams, j: int, c: int) -> int:
    """Number of non-TRD (l+c) x l indices of T_j, without enumerating them."""
    R, C = (j + 1) * params.nk, (j + 1) * params.k

    @functools.lru_cache(maxsize=None)
    def ways(remaining: int, i_prev: int, j_prev: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for i in range(i_prev + 1, R + 1):
            for jt in range(j_prev + 1, min(_cap(i, params), C) + 1):
                total += ways(remaining - 1, i, jt)
        return total

    total = 0
    for l in range(1, min(R - c, C) + 1):  # noqa: E741
        # i_{1+c} = i; the c rows above it are free
        for i in range(c + 1, R + 1):
            for jt in range(1, min(_cap(i, params), C) + 1):
                total += math.comb(i - 1, c) * ways(l - 1, i, jt)
    return total


@dataclass
class CertResult:
    ok: bool
    witness: SubmatrixIndex | None
    scanned: int
    pruned: int
    prop: str = ""

    def lines(self) -> list[str]:
        out = [f"cert {self.prop} {'true' if self.ok else 'false'}"]
        if self.witness is not None:
            out.append(self.witness.format())
        out.append(f"counts scanned={self.scanned} pruned={self.pruned}")
        return out


def certify_submatrices(
    blocks: Sequence[Mat],
    params: CodeParams,
    c: int,
    row_limit: int | None = None,
    ceiling: int = DEFAULT_CEILING,
) -> CertResult:
    """Every non-TRD (l+c) x l submatrix of T_j (optionally only among its top
    ``row_limit`` rows) has rank l.  Stops at the first failure."""
    j = len(blocks) - 1
    T = build_T(blocks).dense
    F = T.field
    limited = row_limit is not None and row_limit < T.rows
    if limited:
        T = Mat(F, row_limit, T.cols, T.data[:row_limit])
    total = count_submatrices(params, j, c)
    nontrivial = count_nontrivial(params, j, c)
    if nontrivial > ceiling:
        raise CertificationTooLarge(nontrivial, ceiling)
    data = T.data
    scanned = 0
    for idx in enumerate_submatrices(params, j, c, skip_trd=True):
        if limited and idx.rows[-1] > row_limit:
            continue
        scanned += 1
        rows = [[data[i - 1][jj - 1] for jj in idx.cols] for i in idx.rows]
        if rank_rows(F, rows, idx.l) < idx.l:
            return CertResult(False, idx, scanned, total - nontrivial)
    return CertResult(True, None, scanned, total - nontrivial)


def certify_MDP(blocks: Sequence[Mat], params: CodeParams, ceiling: int = DEFAULT_CEILING) -> CertResult:
    """Every square submatrix of T_L that is not TRD is nonsingular."""
    if len(blocks) != params.L + 1:
        raise ValueError(f"need L+1 = {params.L + 1} blocks, got {len(blocks)}")
    res = certify_submatrices(blocks, params, 0, ceiling=ceiling)
    res.prop = "MDP"
    return res


def certify_sMDS(blocks: Sequence[Mat], params: CodeParams, ceiling: int = DEFAULT_CEILING) -> CertResult:
    """Every non-TRD (l + n-k-r) x l submatrix of T_M has full column rank.

    For r = 0 the two properties coincide and T_M = T_L is certified as for MDP.
    """
    if len(blocks) != params.M + 1:
        raise ValueError(f"need M+1 = {params.M + 1} blocks, got {len(blocks)}")
    if params.r == 0:
        res = certify_submatrices(blocks, params, 0, ceiling=ceiling)
    else:
        res = certify_submatrices(blocks, params, params.nk - params.r, ceiling=ceiling)
    res.prop = "sMDS"
    return res
