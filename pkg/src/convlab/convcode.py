"""Convolutional codes: parameters, weights and brute-force distance oracles."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .gf import GF
from .matrix import Mat, rank
from .polymat import (
    PolyMat,
    PolyMatError,
    code_degree,
    column_degrees,
    high_order_matrix,
    minors_gcd_is_unit,
)

DEFAULT_BUDGET = 1 << 26


class Infeasible(RuntimeError):
    """An oracle would exceed its enumeration budget; no number is returned."""

    def __init__(self, what: str, cost: int, budget: int):
        super().__init__(f"{what}: cost {cost} exceeds budget {budget}")
        self.cost = cost
        self.budget = budget


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    delta: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.k, int) and isinstance(self.delta, int)):
            raise ValueError("code parameters must be integers")
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        if self.delta < 0:
            raise ValueError(f"degree must be nonnegative, got {self.delta}")

    @property
    def nk(self) -> int:
        return self.n - self.k

    @property
    def L(self) -> int:
        return self.delta // self.k + self.delta // self.nk

    @property
    def M(self) -> int:
        return self.delta // self.k + -(-self.delta // self.nk)

    @property
    def r(self) -> int:
        return self.delta - (self.delta // self.nk) * self.nk

    @property
    def r_prime(self) -> int:
        return self.delta - (self.delta // self.k) * self.k

    @property
    def singleton(self) -> int:
        """Generalized Singleton bound on the free distance."""
        return self.nk * (self.delta // self.k + 1) + self.delta + 1

    def col_bound(self, j: int) -> int:
        return self.nk * (j + 1) + 1


def params_make(n: int, k: int, delta: int) -> CodeParams:
    return CodeParams(n, k, delta)


@dataclass(frozen=True, eq=False)
class ConvCode:
    """A code given by a minimal generator matrix of a direct summand."""

    field: GF
    params: CodeParams
    G: PolyMat

    def __post_init__(self) -> None:
        G, p = self.G, self.params
        if (G.n, G.k) != (p.n, p.k) or G.field != self.field:
            raise ValueError("generator shape/field does not match the parameters")
        if rank(high_order_matrix(G)) != p.k:
            raise PolyMatError("generator matrix is not minimal")
        if not minors_gcd_is_unit(G):
            raise PolyMatError("generator matrix does not generate a direct summand")
        degs = column_degrees(G)
        if sum(degs) != p.delta or code_degree(G) != p.delta:
            raise ValueError(f"generator has degree {code_degree(G)}, not {p.delta}")

    @classmethod
    def from_generator(cls, G: PolyMat) -> ConvCode:
        return cls(G.field, CodeParams(G.n, G.k, sum(column_degrees(G))), G)


def weight(v: PolyMat | Iterable[Mat]) -> int:
    mats = v.coeffs if isinstance(v, PolyMat) else v
    return sum(1 for M in mats for r in M.data for a in r if a)


def _vectors(F: GF, k: int) -> list[tuple[int, ...]]:
    # enumeration order: element order of the field, last coordinate fastest
    return list(itertools.product(range(F.q), repeat=k))


def _matvec(F: GF, M: Mat, u: tuple[int, ...]) -> tuple[int, ...]:
    add, mul = F.add, F.mul
    out = []
    for row in M.data:
        s = 0
        for a, b in zip(row, u):
            if a and b:
                s = add(s, mul(a, b))
        out.append(s)
    return tuple(out)


def _vadd(F: GF, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    add = F.add
    return tuple(add(x, y) for x, y in zip(a, b))


def column_distance_oracle(C: ConvCode, j: int, budget: int = DEFAULT_BUDGET) -> int:
    """Exact d_j^c by enumerating message prefixes u_0..u_j with u_0 != 0.

    Branch and bound prunes prefixes whose accumulated weight already reaches
    the best value found; the enumeration order is the field element order.
    """
    F, G = C.field, C.G
    n, k = C.params.n, C.params.k
    cost = (F.q ** k - 1) * F.q ** (j * k)
    if cost > budget:
        raise Infeasible(f"column distance d_{j}", cost, budget)
    msgs = _vectors(F, k)
    # products[i][a] = G_i u_a
    products = [[_matvec(F, G.coeff(i), u) for u in msgs] for i in range(j + 1)]
    zero = (0,) * n
    best = C.params.col_bound(j) + 1
    chosen: list[int] = []

    def dfs(t: int, acc: int) -> None:
        nonlocal best
        for a in range(len(msgs)):
            if t == 0 and a == 0:
                continue
            chosen.append(a)
            v = zero
            for i in range(t + 1):
                v = _vadd(F, v, products[i][chosen[t - i]])
            w = acc + sum(1 for x in v if x)
            if w < best:
                if t == j:
                    best = w
                else:
                    dfs(t + 1, w)
            chosen.pop()

    dfs(0, 0)
    if best > C.params.col_bound(j):
        raise AssertionError(f"d_{j}^c exceeds (n-k)(j+1)+1; generator is not a valid code")
    return best


def min_closed_walk(
    start: Hashable,
    first_edges: Iterable[tuple[Hashable, int]],
    edges: Callable[[Hashable], Iterable[tuple[Hashable, int]]],
    cutoff: int,
) -> int | None:
    """Least weight of a walk start -> ... -> start that begins with one of
    ``first_edges``; walks of weight >= cutoff are pruned.  None if none found."""
    dist: dict[Hashable, int] = {}
    heap: list[tuple[int, int, Hashable]] = []
    counter = itertools.count()
    best = cutoff
    for nxt, w in first_edges:
        if nxt == start:
            best = min(best, w)
        elif w < best and w < dist.get(nxt, cutoff):
            dist[nxt] = w
            heapq.heappush(heap, (w, next(counter), nxt))
    while heap:
        d, _, s = heapq.heappop(heap)
        if d >= best:
            break
        if d > dist.get(s, cutoff):
            continue
        for nxt, w in edges(s):
            nd = d + w
            if nxt == start:
                best = min(best, nd)
            elif nd < best and nd < dist.get(nxt, cutoff):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, next(counter), nxt))
    return best if best < cutoff else None


def free_distance_oracle(C, budget: int = DEFAULT_BUDGET) -> int:
    """Exact free distance by a shortest closed walk at the zero state.

    ``C`` is a :class:`ConvCode` (controller-form trellis of its generator) or
    a realization (its own state graph, see :mod:`convlab.lsys`).
    """
    if not isinstance(C, ConvCode):
        from .lsys import free_distance_from_realization
        return free_distance_from_realization(C, budget)
    F, G, p = C.field, C.G, C.params
    if p.delta == 0:
        return column_distance_oracle(C, 0, budget)
    cost = F.q ** (p.delta + p.k)
    if cost > budget:
        raise Infeasible("free distance", cost, budget)
    degs = column_degrees(G)
    msgs = _vectors(F, p.k)
    # column j of G_i as a vector, for tap (i, j)
    taps = [[tuple(G.coeff(i).data[r][j] for r in range(p.n)) for i in range(degs[j] + 1)] for j in range(p.k)]
    zero = (0,) * p.n
    mul = F.mul

    def step(state, u):
        # state[j] = (u_{t-1,j}, ..., u_{t-d_j,j})
        v = zero
        for j in range(p.k):
            hist = (u[j],) + state[j]
            for i, x in enumerate(hist):
                if x:
                    v = _vadd(F, v, tuple(mul(x, g) for g in taps[j][i]))
        nxt = tuple(((u[j],) + state[j])[: degs[j]] for j in range(p.k))
        return nxt, sum(1 for x in v if x)

    start = tuple((0,) * d for d in degs)

    def edges(s):
        return (step(s, u) for u in msgs)

    first = (step(start, u) for u in msgs[1:])
    found = min_closed_walk(start, first, edges, p.singleton + 1)
    if found is None:
        raise AssertionError("free distance exceeds the generalized Singleton bound")
    return found


def is_MDP(C: ConvCode, budget: int = DEFAULT_BUDGET) -> bool:
    L = C.params.L
    return column_distance_oracle(C, L, budget) == C.params.col_bound(L)


def is_MDS(C: ConvCode, budget: int = DEFAULT_BUDGET) -> bool:
    return free_distance_oracle(C, budget) == C.params.singleton


def is_sMDS(C: ConvCode, budget: int = DEFAULT_BUDGET) -> bool:
    return column_distance_oracle(C, C.params.M, budget) == C.params.singleton


def check_profile(profile: list[int], params: CodeParams) -> None:
    """Assert monotonicity and downward propagation of bound attainment."""
    for a, b in zip(profile, profile[1:]):
        if b < a:
            raise AssertionError(f"column distance profile decreases: {profile}")
    for j, d in enumerate(profile):
        if d > params.col_bound(j):
            raise AssertionError(f"d_{j}^c = {d} exceeds (n-k)(j+1)+1")
        if d == params.col_bound(j):
            for i in range(j):
                if profile[i] != params.col_bound(i):
                    raise AssertionError(f"bound attained at {j} but not at {i}: {profile}")


def column_distance_profile(C: ConvCode, jmax: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    profile = [column_distance_oracle(C, j, budget) for j in range(jmax + 1)]
    check_profile(profile, C.params)
    return profile


def random_code(F: GF, n: int, k: int, degrees: list[int], rng, max_tries: int = 1000) -> ConvCode:
    """Uniformly sample generators with the given column degrees until one is
    minimal and generates a direct summand."""
    for _ in range(max_tries):
        ents = [[[rng.randrange(F.q) for _ in range(degrees[j] + 1)] for j in range(k)] for _ in range(n)]
        G = PolyMat.from_entries(F, ents)
        try:
            if column_degrees(G) != list(degrees):
                continue
            if rank(high_order_matrix(G)) != k or not minors_gcd_is_unit(G):
                continue
        except PolyMatError:
            continue
        return ConvCode(F, CodeParams(n, k, sum(degrees)), G)
    raise RuntimeError(f"no valid generator found in {max_tries} draws")
