from __future__ import annotations

import random

import pytest

from convlab.convcode import CodeParams, column_distance_oracle
from convlab.gf import field_make
from convlab.lsys import code_from_realization, column_distance_from_realization
from convlab.matrix import Mat, rank_rows
from convlab.realize import partial_realization
from convlab.toeplitz import (
    CertificationTooLarge,
    SubmatrixIndex,
    build_T,
    certify_MDP,
    certify_sMDS,
    certify_submatrices,
    count_nontrivial,
    count_submatrices,
    enumerate_submatrices,
    indeterminate,
    is_trd,
    symbolic_zero_oracle,
)

F3 = field_make(3)
P311 = CodeParams(3, 1, 1)


def col(F, *vals):
    return Mat.column(F, list(vals))


def test_build_T_small():
    F0, F1 = col(F3, 1, 2), col(F3, 0, 1)
    assert build_T([F0]).dense == F0
    T = build_T([F0, F1]).dense
    assert T.data == ((1, 0), (2, 0), (0, 1), (1, 2))


def test_build_T_structural_zeros():
    rng = random.Random(0)
    blocks = [col(F3, 1 + rng.randrange(2), 1 + rng.randrange(2)) for _ in range(3)]
    T = build_T(blocks).dense
    assert T.shape == (6, 3)
    for i in range(1, 7):
        for j in range(1, 4):
            assert (T[i - 1, j - 1] == 0) == (j > -(-i // 2))
            assert (indeterminate(P311, i, j) is None) == (j > -(-i // 2))


def test_trd_examples():
    assert is_trd(SubmatrixIndex((1,), (2,)), P311)
    assert not is_trd(SubmatrixIndex((1, 2), (1,)), P311)
    assert not is_trd(SubmatrixIndex((3, 4), (1, 2)), P311)


def test_symbolic_oracle_examples():
    assert symbolic_zero_oracle(SubmatrixIndex((1, 3), (2, 3)), P311)  # row 1 is zero there
    assert not symbolic_zero_oracle(SubmatrixIndex((4,), (1,)), P311)


@pytest.mark.parametrize("j,c,total", [(0, 0, 2), (1, 0, 14), (2, 0, 83), (2, 1, 120)])
def test_enumeration_counts(j, c, total):
    idx = list(enumerate_submatrices(P311, j, c))
    assert len(idx) == total == count_submatrices(P311, j, c)
    assert len(set(idx)) == total
    keep = [i for i in idx if not is_trd(i, P311)]
    assert list(enumerate_submatrices(P311, j, c, skip_trd=True)) == keep
    assert count_nontrivial(P311, j, c) == len(keep)


def test_count_nontrivial_other_params():
    for prm in ((4, 2, 1), (4, 1, 2), (5, 2, 3)):
        p = CodeParams(*prm)
        for c in (0, 1):
            assert count_nontrivial(p, p.L, c) == sum(1 for _ in enumerate_submatrices(p, p.L, c, skip_trd=True))


def test_certify_mdp_examples():
    ok = certify_MDP([col(F3, 1, 1), col(F3, 1, 2)], P311)
    assert ok.ok and ok.witness is None
    bad = certify_MDP([col(F3, 1, 1), col(F3, 2, 2)], P311)
    assert not bad.ok
    assert bad.witness == SubmatrixIndex((3, 4), (1, 2))
    assert bad.lines() == ["cert MDP false", "witness rows 3 4 cols 1 2", f"counts scanned={bad.scanned} pruned=3"]
    zero = certify_MDP([col(F3, 0, 1), col(F3, 1, 2)], P311)
    assert not zero.ok and zero.witness.l == 1


def test_certify_needs_right_length():
    with pytest.raises(ValueError):
        certify_MDP([col(F3, 1, 1)], P311)
    with pytest.raises(ValueError):
        certify_sMDS([col(F3, 1, 1), col(F3, 1, 2)], P311)


def test_witness_is_rank_deficient():
    rng = random.Random(4)
    F = field_make(5)
    for _ in range(50):
        blocks = [col(F, rng.randrange(5), rng.randrange(5)) for _ in range(3)]
        res = certify_sMDS(blocks, P311)
        if res.ok:
            continue
        T = build_T(blocks).dense
        w = res.witness
        assert not is_trd(w, P311)
        assert rank_rows(F, [[T[i - 1, j - 1] for j in w.cols] for i in w.rows], w.l) < w.l


def test_r0_smds_is_mdp():
    p = CodeParams(2, 1, 2)
    rng = random.Random(5)
    F = field_make(2, 3)
    for _ in range(30):
        blocks = [Mat(F, 1, 1, [[rng.randrange(F.q)]]) for _ in range(p.L + 1)]
        a, b = certify_MDP(blocks, p), certify_sMDS(blocks, p)
        assert (a.ok, a.witness, a.scanned) == (b.ok, b.witness, b.scanned)


def test_ceiling():
    p = CodeParams(5, 2, 3)
    blocks = [Mat(field_make(2, 4), 3, 2) for _ in range(p.L + 1)]
    with pytest.raises(CertificationTooLarge):
        certify_submatrices(blocks, p, 0, ceiling=100)


def test_passing_smds_sequence_gives_d_M():
    from .fixtures import mdp_311
    from convlab.lsys import markov

    R = mdp_311()
    blocks = markov(R, 3)
    assert certify_MDP(blocks[:2], P311).ok and certify_sMDS(blocks, P311).ok
    assert column_distance_oracle(code_from_realization(R), 2) == 6


def test_smds_converse_counterexample():
    """A non-MDP (4,2,1) code that is sMDS although certify_sMDS finds a
    rank-deficient non-TRD witness: the witness does not come from a
    codeword with u_0 != 0.  Soundness (certificate implies sMDS) still holds."""
    F = field_make(2, 3)
    p = CodeParams(4, 2, 1)
    D = Mat.from_rows(F, [[0, 5], [7, 0]])
    F1 = Mat.from_rows(F, [[5, 4], [1, 6]])
    res = certify_sMDS([D, F1], p)
    assert not res.ok
    assert res.witness == SubmatrixIndex((1, 3), (3,))
    R = partial_realization([D, F1], 1)
    assert column_distance_from_realization(R, p.M) == p.singleton == 4
    assert not certify_MDP([D, F1][: p.L + 1], p).ok
