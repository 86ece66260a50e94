"""Randomized search for certified MDP and sMDS codes over a ladder of fields."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .convcode import DEFAULT_BUDGET, CodeParams, ConvCode, Infeasible
from .gf import GF, field_make
from .lsys import Realization, code_from_realization, column_distance_from_realization, free_distance_from_realization
from .matrix import random_mat
from .realize import (
    FieldTooSmall,
    MarkovSeq,
    check_FM1,
    complete_FM,
    minimal_degree,
    partial_realization,
    verify_realization,
)
from .toeplitz import DEFAULT_CEILING, CertResult, certify_MDP, certify_sMDS

ORACLE_MODES = ("on", "off", "auto")


def default_ladder(p: int = 2) -> tuple[GF, ...]:
    """Fields GF(p^m) with 4 <= q <= 256, or just GF(p) for large p."""
    out = [field_make(p, m) for m in range(1, 9) if 4 <= p ** m <= 256]
    return tuple(out) or (field_make(p, 1),)


class SearchFailed(RuntimeError):
    def __init__(self, trials: int, stalled: int, fields: Sequence[GF]):
        super().__init__(
            f"no certified code after {trials} trials ({stalled} stalled completions) over "
            + ", ".join(f"GF({F.q})" for F in fields)
        )
        self.trials = trials
        self.stalled = stalled


@dataclass(frozen=True)
class SearchConfig:
    params: CodeParams
    ladder: tuple[GF, ...] = field(default_factory=default_ladder)
    trials: int = 100
    seed: int = 0
    ceiling: int = DEFAULT_CEILING
    budget: int = DEFAULT_BUDGET
    oracle: str = "auto"
    completion_retries: int = 64

    def __post_init__(self) -> None:
        if not self.ladder:
            raise ValueError("field ladder is empty")
        qs = [F.q for F in self.ladder]
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ValueError(f"field ladder must be strictly increasing in q, got {qs}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.oracle not in ORACLE_MODES:
            raise ValueError(f"oracle mode must be one of {ORACLE_MODES}")


@dataclass
class SearchResult:
    field: GF
    markov: MarkovSeq
    realization: Realization
    code: ConvCode
    certificates: list[CertResult]
    oracle_status: str  # confirmed | skipped | off
    distances: dict[str, int]
    trials: int  # total prefixes drawn, all fields
    field_trials: int  # prefixes drawn in the final field
    stalled: int  # certified prefixes whose completion gave up

    def report_lines(self) -> list[str]:
        p = self.code.params
        out = [
            "convlab v1",
            f"search {p.n} {p.k} {p.delta}",
            self.field.header(),
            f"trials total={self.trials} field={self.field_trials} stalled={self.stalled}",
        ]
        for c in self.certificates:
            out += c.lines()
        out.append(f"oracle {self.oracle_status}")
        for j in sorted(int(key[1:]) for key in self.distances if key.startswith("d")):
            out.append(f"dcol {j} {self.distances[f'd{j}']}")
        if "free" in self.distances:
            out.append(f"dfree {self.distances['free']}")
        return out

    def report(self) -> str:
        return "\n".join(self.report_lines()) + "\n"


def _oracle(R: Realization, p: CodeParams, mode: str, budget: int) -> tuple[str, dict[str, int]]:
    if mode == "off":
        return "off", {}
    try:
        dist = {f"d{j}": column_distance_from_realization(R, j, budget) for j in sorted({p.L, p.M})}
        dist["free"] = free_distance_from_realization(R, budget)
    except Infeasible:
        if mode == "on":
            raise
        return "skipped", {}
    want = {f"d{p.L}": p.col_bound(p.L), f"d{p.M}": p.singleton, "free": p.singleton}
    if dist != want:
        raise AssertionError(f"oracle contradicts certification: {dist} != {want}")
    return "confirmed", dist


def attempt(prefix: list, p: CodeParams, rng: random.Random, cfg: SearchConfig) -> tuple | None:
    """One trial from a sampled prefix F_0..F_L; None when the prefix is not MDP."""
    mdp = certify_MDP(prefix, p, ceiling=cfg.ceiling)
    if not mdp.ok:
        return None
    if p.r == 0:
        seq = MarkovSeq(tuple(prefix), p)
    else:
        seq = complete_FM(prefix, p, rng, retries=cfg.completion_retries)
    smds = certify_sMDS(seq.blocks, p, ceiling=cfg.ceiling)
    if not smds.ok:
        raise AssertionError("completed sequence failed sMDS certification")
    if p.delta and minimal_degree(seq) != p.delta:
        raise AssertionError("minimal partial realization degree differs from delta")
    if p.delta and check_FM1(seq, p):
        raise AssertionError("; ".join(check_FM1(seq, p)))
    R = partial_realization(seq, p.delta)
    if not verify_realization(R, seq):
        raise AssertionError("realization does not reproduce the Markov data")
    return seq, R, code_from_realization(R), [mdp, smds]


def search(cfg: SearchConfig) -> SearchResult:
    """Sample uniform prefixes until one is certified and completes.

    A single :class:`random.Random` seeded from ``cfg.seed`` drives all draws,
    so the outcome is a function of the config.
    """
    p = cfg.params
    rng = random.Random(cfg.seed)
    total = stalled = 0
    for F in cfg.ladder:
        for t in range(1, cfg.trials + 1):
            total += 1
            prefix = [random_mat(F, p.nk, p.k, rng) for _ in range(p.L + 1)]
            try:
                got = attempt(prefix, p, rng, cfg)
            except FieldTooSmall:
                stalled += 1
                continue
            if got is None:
                continue
            seq, R, code, certs = got
            status, dist = _oracle(R, p, cfg.oracle, cfg.budget)
            return SearchResult(F, seq, R, code, certs, status, dist, total, t, stalled)
    raise SearchFailed(total, stalled, cfg.ladder)
