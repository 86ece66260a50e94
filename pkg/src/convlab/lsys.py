"""Input-state-output realizations x_{t+1} = A x_t + B u_t, y_t = C x_t + D u_t.

Codewords of the represented code are the finite-weight trajectories read
as ``sum_t (y_t, u_t) s^t`` with outputs stacked above inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .convcode import (
    DEFAULT_BUDGET,
    CodeParams,
    ConvCode,
    Infeasible,
    min_closed_walk,
)
from .gf import GF
from .matrix import Mat, hstack, identity, mat_pow, mul, rank, right_kernel_basis, solve, vstack
from .polymat import PolyMat, column_degrees, minimalize, minors_gcd_is_unit, reverse


class RealizationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Realization:
    A: Mat
    B: Mat
    C: Mat
    D: Mat
    field: GF
    params: CodeParams

    def __post_init__(self) -> None:
        p = self.params
        d, k, nk = p.delta, p.k, p.nk
        for name, M, shape in (("A", self.A, (d, d)), ("B", self.B, (d, k)),
                               ("C", self.C, (nk, d)), ("D", self.D, (nk, k))):
            if M.shape != shape:
                raise RealizationError(f"{name} is {M.shape}, expected {shape}")
            if M.field != self.field:
                raise RealizationError(f"{name} is over {M.field!r}, expected {self.field!r}")

    @classmethod
    def make(cls, A: Mat, B: Mat, C: Mat, D: Mat) -> Realization:
        params = CodeParams(D.rows + D.cols, D.cols, A.rows)
        return cls(A, B, C, D, D.field, params)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Realization) and self.params == other.params
                and (self.A, self.B, self.C, self.D) == (other.A, other.B, other.C, other.D))


@dataclass
class Trajectory:
    inputs: list[tuple[int, ...]]
    states: list[tuple[int, ...]]
    outputs: list[tuple[int, ...]]
    field: GF = field(repr=False, default=None)

    @property
    def finite_weight(self) -> bool:
        return not any(self.states[-1])

    def codeword(self) -> PolyMat:
        """sum_t (y_t; u_t) s^t."""
        F = self.field
        vecs = [list(y) + list(u) for y, u in zip(self.outputs, self.inputs)]
        return PolyMat(F, len(vecs[0]), 1, [Mat.column(F, v) for v in vecs])

    def weight(self, upto: int | None = None) -> int:
        ys = self.outputs if upto is None else self.outputs[: upto + 1]
        us = self.inputs if upto is None else self.inputs[: upto + 1]
        return sum(1 for v in ys for a in v if a) + sum(1 for v in us for a in v if a)


def controllability_matrix(A: Mat, B: Mat) -> Mat:
    blocks = [B]
    for _ in range(1, A.rows):
        blocks.append(mul(A, blocks[-1]))
    return hstack(blocks) if A.rows else Mat(A.field, 0, B.cols)


def observability_matrix(A: Mat, C: Mat) -> Mat:
    blocks = [C]
    for _ in range(1, A.rows):
        blocks.append(mul(blocks[-1], A))
    return vstack(blocks) if A.rows else Mat(A.field, C.rows, 0)


def is_reachable(A: Mat, B: Mat) -> bool:
    return rank(controllability_matrix(A, B)) == A.rows


def is_observable(A: Mat, C: Mat) -> bool:
    return rank(observability_matrix(A, C)) == A.rows


def is_minimal_realization(R: Realization) -> bool:
    return is_reachable(R.A, R.B) and is_observable(R.A, R.C)


def markov(R: Realization, count: int) -> list[Mat]:
    """F_0 = D, F_i = C A^(i-1) B."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [R.D]
    AB = R.B
    for _ in range(1, count):
        out.append(mul(R.C, AB))
        AB = mul(R.A, AB)
    return out


def _mv(F: GF, M: Mat, v: Sequence[int]) -> tuple[int, ...]:
    add, m = F.add, F.mul
    out = []
    for row in M.data:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add(s, m(a, b))
        out.append(s)
    return tuple(out)


def _va(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    add = F.add
    return tuple(add(x, y) for x, y in zip(a, b))


def run(R: Realization, inputs: Sequence[Sequence[int]]) -> Trajectory:
    F = R.field
    x = (0,) * R.params.delta
    states = [x]
    outputs = []
    ins = [tuple(u) for u in inputs]
    for u in ins:
        if len(u) != R.params.k:
            raise RealizationError(f"input {u} does not have length {R.params.k}")
        outputs.append(_va(F, _mv(F, R.C, x), _mv(F, R.D, u)))
        x = _va(F, _mv(F, R.A, x), _mv(F, R.B, u))
        states.append(x)
    return Trajectory(ins, states, outputs, F)


def drive_to_zero(R: Realization, prefix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Append at most delta inputs that steer the state back to 0."""
    if not is_reachable(R.A, R.B):
        raise RealizationError("(A, B) is not reachable")
    F = R.field
    x = run(R, prefix).states[-1]
    ext: list[tuple[int, ...]] = []
    if not any(x):
        return [tuple(u) for u in prefix]
    for m in range(1, R.params.delta + 1):
        # A^m x + sum_i A^(m-1-i) B v_i = 0
        blocks = [mul(mat_pow(R.A, m - 1 - i), R.B) for i in range(m)]
        rhs = Mat.column(F, [F.neg(a) for a in _mv(F, mat_pow(R.A, m), x)])
        sol = solve(hstack(blocks), rhs)
        if sol is not None:
            vals = sol.col(0)
            k = R.params.k
            ext = [tuple(vals[i * k:(i + 1) * k]) for i in range(m)]
            break
    else:  # pragma: no cover - reachable pairs always succeed
        raise AssertionError("could not reach the zero state in delta steps")
    return [tuple(u) for u in prefix] + ext


# -- the represented code ----------------------------------------------------

def minimal_kernel_basis(P: PolyMat, max_degree: int, dim: int | None = None) -> list[PolyMat]:
    """Minimal polynomial basis of {w(s) : P(s) w(s) = 0}, degree by degree.

    At degree d, kernel vectors of the coefficient map on degree <= d vectors
    are added greedily when they are independent of the s-shifts of the
    basis vectors already found.  ``dim`` is the kernel rank; by default P is
    taken to have full row rank.
    """
    F = P.field
    prow, mcol = P.n, P.k
    target = mcol - prow if dim is None else dim
    basis: list[list[list[int]]] = []  # coefficient vectors w_0..w_e
    dP = len(P.coeffs) - 1
    for d in range(max_degree + 1):
        rows = (d + 1 + dP) * prow
        cols = (d + 1) * mcol
        S = [[0] * cols for _ in range(rows)]
        for t, Pt in enumerate(P.coeffs):
            for i in range(d + 1):
                for a in range(prow):
                    for b in range(mcol):
                        S[(t + i) * prow + a][i * mcol + b] = Pt.data[a][b]
        K = [kv.col(0) for kv in right_kernel_basis(Mat(F, rows, cols, S))]
        span = []
        for b in basis:
            e = len(b) - 1
            flat = [x for w in b for x in w]
            for i in range(d - e + 1):
                span.append([0] * (i * mcol) + flat + [0] * ((d - e - i) * mcol))
        r0 = rank(Mat(F, len(span), cols, span)) if span else 0
        for kv in K:
            if len(basis) == target:
                break
            trial = span + [kv]
            r1 = rank(Mat(F, len(trial), cols, trial))
            if r1 > r0:
                span, r0 = trial, r1
                w = [kv[i * mcol:(i + 1) * mcol] for i in range(d + 1)]
                while len(w) > 1 and not any(w[-1]):
                    w.pop()
                basis.append(w)
        if len(basis) == target:
            break
    if len(basis) != target:
        raise AssertionError(f"kernel basis incomplete at degree bound {max_degree}")
    return [PolyMat(F, mcol, 1, [Mat.column(F, w) for w in b]) for b in basis]


def state_kernel_matrix(R: Realization) -> PolyMat:
    """[[sI - A, 0, -B], [-C, I, -D]] as a polynomial matrix."""
    F = R.field
    d, k, nk = R.params.delta, R.params.k, R.params.nk
    Z = lambda r, c: Mat(F, r, c)  # noqa: E731
    P0 = vstack([hstack([-R.A, Z(d, nk), -R.B]), hstack([-R.C, identity(F, nk), -R.D])]) if d else \
        hstack([identity(F, nk), -R.D])
    P1 = vstack([hstack([identity(F, d), Z(d, nk), Z(d, k)]), Z(nk, d + nk + k)]) if d else Z(nk, nk + k)
    return PolyMat(F, d + nk, d + nk + k, [P0, P1])


def code_from_realization(R: Realization) -> ConvCode:
    """Generator of the code represented by a minimal realization.

    The kernel of the state-kernel matrix yields (x, y, u) polynomial triples
    with reversed time; dropping x gives a generator of that time-reversed
    code, which :func:`convlab.polymat.reverse` turns into the forward one.
    """
    if not is_minimal_realization(R):
        raise RealizationError("realization is not minimal (reachable and observable)")
    F = R.field
    d, n, k = R.params.delta, R.params.n, R.params.k
    kernel = minimal_kernel_basis(state_kernel_matrix(R), 2 * d)
    if len(kernel) != k:
        raise AssertionError("state kernel does not have rank k")
    ents = []
    for i in range(d, d + n):
        ents.append([w.entry(i, 0) for w in kernel])
    G = PolyMat.from_entries(F, ents)
    G = minimalize(G)
    if not minors_gcd_is_unit(G) or sum(column_degrees(G)) != d:
        raise AssertionError("projected kernel basis is not a minimal generator of degree delta")
    return ConvCode(F, R.params, reverse(G))


# -- trellis distances -----------------------------------------------------------

class _Trellis:
    """State graph of a realization.

    In characteristic 2 vectors are packed into ints (m bits per entry) so
    that vector addition is XOR; otherwise they stay tuples.
    """

    def __init__(self, R: Realization):
        F = self.F = R.field
        d, k = R.params.delta, R.params.k
        states = list(itertools.product(range(F.q), repeat=d))
        inputs = list(itertools.product(range(F.q), repeat=k))
        self.packed = F.p == 2
        if self.packed:
            m = F.m
            pack = lambda v: sum(a << (m * i) for i, a in enumerate(v))  # noqa: E731
            self.add = int.__xor__
            mask = (1 << m) - 1
            nk = R.params.nk
            self._wt_cache: dict[int, int] = {}

            def wt(y: int) -> int:
                w = self._wt_cache.get(y)
                if w is None:
                    w = sum(1 for i in range(nk) if (y >> (m * i)) & mask)
                    self._wt_cache[y] = w
                return w
        else:
            pack = tuple
            self.add = lambda a, b: _va(F, a, b)  # noqa: E731

            def wt(y) -> int:
                return sum(1 for a in y if a)
        self.wt = wt
        self.zero = pack((0,) * d)
        self.step = {}
        for x in states:
            self.step[pack(x)] = (pack(_mv(F, R.A, x)), pack(_mv(F, R.C, x)))
        self.inputs = [(pack(_mv(F, R.B, u)), pack(_mv(F, R.D, u)), sum(1 for a in u if a)) for u in inputs]

    def edges(self, x, skip_zero_input=False):
        ax, cx = self.step[x]
        add, wt = self.add, self.wt
        ins = self.inputs[1:] if skip_zero_input else self.inputs
        return [(add(ax, bu), wu + wt(add(cx, du))) for bu, du, wu in ins]


def column_distance_from_realization(R: Realization, j: int, budget: int = DEFAULT_BUDGET) -> int:
    """d_j^c of the represented code by dynamic programming over states:
    min over prefixes u_0..u_j with u_0 != 0 of sum_t wt(y_t) + wt(u_t)."""
    F, p = R.field, R.params
    cost = F.q ** (p.delta + p.k) * (j + 1)
    if cost > budget:
        raise Infeasible(f"column distance d_{j}", cost, budget)
    tr = _Trellis(R)
    cap = p.col_bound(j) + 1
    zero = tr.zero
    cur = {}
    for nx, w in tr.edges(zero, skip_zero_input=True):
        if w < cur.get(nx, cap):
            cur[nx] = w
    for _ in range(j):
        nxt: dict = {}
        for x, acc in cur.items():
            for nx, w in tr.edges(x):
                tot = acc + w
                if tot < nxt.get(nx, cap):
                    nxt[nx] = tot
        cur = nxt
    if not cur:
        raise AssertionError(f"d_{j}^c exceeds (n-k)(j+1)+1")
    return min(cur.values())


def free_distance_from_realization(R: Realization, budget: int = DEFAULT_BUDGET) -> int:
    F, p = R.field, R.params
    cost = F.q ** (p.delta + p.k)
    if cost > budget:
        raise Infeasible("free distance", cost, budget)
    tr = _Trellis(R)
    zero = tr.zero
    found = min_closed_walk(zero, tr.edges(zero, skip_zero_input=True), tr.edges, p.singleton + 1)
    if found is None:
        raise AssertionError("free distance exceeds the generalized Singleton bound")
    return found


def random_realization(F: GF, params: CodeParams, rng, minimal: bool = True, max_tries: int = 10000) -> Realization:
    d, k, nk = params.delta, params.k, params.nk
    for _ in range(max_tries):
        mats = [Mat(F, r, c, [[rng.randrange(F.q) for _ in range(c)] for _ in range(r)])
                for r, c in ((d, d), (d, k), (nk, d), (nk, k))]
        R = Realization(*mats, F, params)
        if not minimal or is_minimal_realization(R):
            return R
    raise RuntimeError("no minimal realization drawn")
