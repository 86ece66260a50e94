"""Hankel ranks, completion of a certified Markov prefix, and minimal partial
realization of F_0..F_M by a state-space quadruple."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .convcode import CodeParams, ConvCode
from .gf import GF
from .lsys import Realization, code_from_realization, is_observable, is_reachable, markov
from .polymat import in_code
from .matrix import Mat, det, mul, rank, rank_rows, rref, solve, solve_left, vstack
from .toeplitz import certify_sMDS, certify_submatrices


class FieldTooSmall(RuntimeError):
    """Random completion kept failing; retry over a larger field."""


class RealizationFailure(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MarkovSeq:
    blocks: tuple[Mat, ...]
    params: CodeParams

    def __post_init__(self) -> None:
        p = self.params
        if len(self.blocks) != p.M + 1:
            raise ValueError(f"need M+1 = {p.M + 1} blocks, got {len(self.blocks)}")
        F = self.blocks[0].field
        for B in self.blocks:
            if B.shape != (p.nk, p.k) or B.field != F:
                raise ValueError(f"Markov blocks must be {p.nk}x{p.k} over one field")

    @property
    def field(self) -> GF:
        return self.blocks[0].field

    @property
    def M(self) -> int:
        return len(self.blocks) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MarkovSeq) and self.params == other.params and self.blocks == other.blocks


def _blocks(seq) -> list[Mat]:
    return list(seq.blocks) if isinstance(seq, MarkovSeq) else list(seq)


def hankel(seq, x: int, y: int) -> Mat:
    """Block Hankel matrix with F_{s+t-1} in block (s, t), s <= x, t <= y."""
    F = _blocks(seq)
    if x < 1 or y < 1:
        raise ValueError("hankel dimensions must be positive")
    if x + y - 1 > len(F) - 1:
        raise ValueError(f"hankel({x},{y}) needs F_{x + y - 1}, only F_0..F_{len(F) - 1} given")
    a, b = F[0].shape
    data = []
    for s in range(1, x + 1):
        for i in range(a):
            data.append([F[s + t - 1].data[i][jj] for t in range(1, y + 1) for jj in range(b)])
    return Mat(F[0].field, x * a, y * b, data)


def minimal_degree(seq) -> int:
    """Degree of a minimal partial realization of F_0..F_M:
    sum_{x=1}^{M} rank H(x, M+1-x) - sum_{x=1}^{M-1} rank H(x, M-x)."""
    M = len(_blocks(seq)) - 1
    if M < 1:
        raise ValueError("need at least F_0 and F_1")
    up = sum(rank(hankel(seq, x, M + 1 - x)) for x in range(1, M + 1))
    down = sum(rank(hankel(seq, x, M - x)) for x in range(1, M))
    return up - down


def xbar(params: CodeParams) -> int:
    """ceil(M k / n), the only Hankel split that can lose rank."""
    p = params
    xb = -(-p.M * p.k // p.n)
    if p.r >= 1:
        assert p.delta // p.nk == xb - 1
        assert (p.M - xb) * p.k == p.delta - p.r_prime
    return xb


def check_FM1(seq, params: CodeParams) -> list[str]:
    """Hankel rank pattern implied by an MDP prefix; returns violations."""
    M = len(_blocks(seq)) - 1
    p = params
    xb = xbar(p)
    bad = []
    for x in range(1, M):
        got, want = rank(hankel(seq, x, M - x)), min(x * p.nk, (M - x) * p.k)
        if got != want:
            bad.append(f"rank H({x},{M - x}) = {got}, expected {want}")
    for x in range(1, M + 1):
        if x == xb:
            continue
        got, want = rank(hankel(seq, x, M + 1 - x)), min(x * p.nk, (M + 1 - x) * p.k)
        if got != want:
            bad.append(f"rank H({x},{M + 1 - x}) = {got}, expected {want}")
    md, red = minimal_degree(seq), rank(hankel(seq, xb, M + 1 - xb))
    if md != red:
        bad.append(f"minimal degree {md} != rank H({xb},{M + 1 - xb}) = {red}")
    return bad


def complete_FM(prefix: Sequence[Mat], params: CodeParams, rng, retries: int = 64) -> MarkovSeq:
    """Extend a certified F_0..F_L by F_M so that the Hankel rank is delta and
    the sMDS condition holds.

    The top r rows of F_M are drawn at random until every non-TRD square
    submatrix in the top M(n-k)+r rows of T_M is nonsingular.  The bottom
    n-k-r rows are then forced: each bottom row of H(xbar, M-xbar) is a
    combination of (M-xbar)k chosen top rows, and the same combination is
    applied to the last block column.
    """
    p = params
    if p.r == 0:
        raise ValueError("r = 0: the certified prefix F_0..F_L is already complete")
    prefix = list(prefix)
    if len(prefix) != p.L + 1:
        raise ValueError(f"need L+1 = {p.L + 1} prefix blocks")
    F = prefix[0].field
    M, nk, k, r, delta = p.M, p.nk, p.k, p.r, p.delta
    xb = xbar(p)

    for _ in range(retries):
        top = [[rng.randrange(F.q) for _ in range(k)] for _ in range(r)]
        trial = prefix + [Mat(F, nk, k, top + [[0] * k for _ in range(nk - r)])]
        if certify_submatrices(trial, p, 0, row_limit=M * nk + r).ok:
            break
    else:
        raise FieldTooSmall(f"no admissible top rows of F_M over {F!r} in {retries} draws")

    width = (M - xb) * k
    bottom: list[list[int]] = []
    if width == 0:
        bottom = [[0] * k for _ in range(nk - r)]
    else:
        H0 = hankel(trial, xb, M - xb)
        chosen: list[int] = []
        for i in range(delta):
            cand = chosen + [i]
            if rank_rows(F, [H0.data[c] for c in cand], width) == len(cand):
                chosen = cand
            if len(chosen) == width:
                break
        if len(chosen) != width:
            raise AssertionError("top delta rows of H(xbar, M-xbar) lack full column rank")
        S = Mat(F, width, width, [H0.data[c] for c in chosen])
        # rows of [F_{M+1-xbar}; ...; F_M'] for the chosen Hankel rows
        last = vstack(trial[M + 1 - xb:M + 1])
        for i in range(delta, xb * nk):
            coef = solve_left(S, Mat(F, 1, width, [H0.data[i]]))
            if coef is None:
                raise AssertionError("bottom Hankel row outside the chosen row space")
            cvec = coef.data[0]
            row = [0] * k
            for a, c in zip(cvec, chosen):
                if a:
                    row = [F.add(x, F.mul(a, y)) for x, y in zip(row, last.data[c])]
            bottom.append(row)
    FM = Mat(F, nk, k, top + bottom)
    seq = MarkovSeq(tuple(prefix + [FM]), p)

    if rank(hankel(seq, xb, M + 1 - xb)) != delta:
        raise AssertionError("completed Hankel matrix does not have rank delta")
    if not certify_sMDS(seq.blocks, p).ok:
        raise AssertionError("completed sequence fails the sMDS condition")
    return seq


def partial_realization(seq, delta: int, split: int | None = None) -> Realization:
    """(A, B, C, D) of state dimension delta with D = F_0, C A^(i-1) B = F_i.

    H(x, N+1-x) = P Q is factored through its pivot columns; C and B are read
    off the first block row / column, and A solves both shifted relations
    P_top A Q = H(rows 2..x) and P A Q_left = H(cols 2..).
    """
    blocks = _blocks(seq)
    N = len(blocks) - 1
    F0 = blocks[0]
    Fd = F0.field
    nk, k = F0.shape
    params = CodeParams(nk + k, k, delta)
    if N >= 1 and minimal_degree(blocks) != delta:
        raise RealizationFailure(f"minimal partial realization degree is {minimal_degree(blocks)}, not {delta}")
    if delta == 0:
        if any(not B.is_zero() for B in blocks[1:]):
            raise RealizationFailure("nonzero Markov parameters need a positive degree")
        Z = lambda r, c: Mat(Fd, r, c)  # noqa: E731
        return Realization(Z(0, 0), Z(0, k), Z(nk, 0), F0, Fd, params)
    order = ([split] if split else []) + list(range(1, N + 1))
    for x in order:
        H = hankel(blocks, x, N + 1 - x)
        if rank(H) == delta:
            break
    else:
        raise RealizationFailure(f"no Hankel split of F_1..F_{N} has rank {delta}")
    R_, piv = rref(H)
    P = Mat(Fd, H.rows, delta, [[row[c] for c in piv] for row in H.data])
    Q = Mat(Fd, delta, H.cols, R_.data[:delta])
    C = Mat(Fd, nk, delta, P.data[:nk])
    B = Mat(Fd, delta, k, [row[:k] for row in Q.data])
    y = N + 1 - x
    eqs, rhs = [], []

    def add_relation(X: Mat, Y: Mat, target: Mat) -> None:
        for i in range(X.rows):
            for jj in range(Y.cols):
                eqs.append([Fd.mul(X.data[i][a], Y.data[b][jj]) for a in range(delta) for b in range(delta)])
                rhs.append([target.data[i][jj]])

    if x > 1:
        Ptop = Mat(Fd, (x - 1) * nk, delta, P.data[:(x - 1) * nk])
        add_relation(Ptop, Q, hankel(blocks[1:], x - 1, y))
    if y > 1:
        Qleft = Mat(Fd, delta, (y - 1) * k, [row[:(y - 1) * k] for row in Q.data])
        add_relation(P, Qleft, hankel(blocks[1:], x, y - 1))
    if eqs:
        sol = solve(Mat(Fd, len(eqs), delta * delta, eqs), Mat(Fd, len(rhs), 1, rhs))
        if sol is None:
            raise AssertionError("shifted Hankel system is inconsistent")
        vals = sol.col(0)
    else:
        vals = [0] * (delta * delta)
    A = Mat(Fd, delta, delta, [vals[i * delta:(i + 1) * delta] for i in range(delta)])
    R = Realization(A, B, C, F0, Fd, params)
    if not verify_realization(R, blocks):
        raise AssertionError("constructed realization does not reproduce the Markov data")
    return R


def verify_realization(R: Realization, seq) -> bool:
    blocks = _blocks(seq)
    if R.params.delta != R.A.rows:
        return False
    if markov(R, len(blocks)) != blocks:
        return False
    return is_reachable(R.A, R.B) and is_observable(R.A, R.C)


def markov_from_code(C: ConvCode, count: int) -> list[Mat]:
    """First ``count`` coefficients of G_y(s) G_u(s)^-1, where G_y is the top
    n-k rows of the generator and G_u the bottom k rows (outputs above inputs)."""
    F, G, p = C.field, C.G, C.params
    nk, k = p.nk, p.k
    top = lambda t: Mat(F, nk, k, G.coeff(t).data[:nk])  # noqa: E731
    bot = lambda t: Mat(F, k, k, G.coeff(t).data[nk:])  # noqa: E731
    U0 = bot(0)
    if det(U0) == 0:
        raise RealizationFailure("input rows of G(0) are singular; the code has no (A, B, C, D) form")
    out: list[Mat] = []
    for i in range(count):
        # T_i U_0 = Y_i - sum_{j<i} T_j U_{i-j}
        acc = top(i)
        for j in range(i):
            acc = acc - mul(out[j], bot(i - j))
        sol = solve(U0.T, acc.T)
        out.append(sol.T)
    return out


def realization_from_code(C: ConvCode) -> Realization:
    """Minimal realization whose code is C, via its first 2 delta + 2 Markov blocks."""
    p = C.params
    blocks = markov_from_code(C, 2 * p.delta + 2)
    R = partial_realization(blocks, p.delta)
    back = code_from_realization(R)
    if not all(in_code(C.G, back.G.column(j)) for j in range(p.k)):
        raise RealizationFailure("realization represents a different code")
    return R
