from __future__ import annotations

import pytest

from convlab.convcode import CodeParams, Infeasible
from convlab.gf import field_make
from convlab.lsys import markov
from convlab.realize import check_FM1, minimal_degree, verify_realization
from convlab.search import SearchConfig, SearchFailed, default_ladder, search
from convlab.toeplitz import certify_MDP, certify_sMDS

P311 = CodeParams(3, 1, 1)


def test_default_ladder():
    assert [F.q for F in default_ladder()] == [4, 8, 16, 32, 64, 128, 256]
    assert [F.q for F in default_ladder(3)] == [9, 27, 81, 243]
    assert [F.q for F in default_ladder(257)] == [257]


@pytest.mark.parametrize("kw", [dict(ladder=()), dict(trials=0), dict(oracle="maybe"),
                                dict(ladder=(field_make(2, 3), field_make(5)))])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SearchConfig(P311, **kw)


def test_default_ladder_311():
    ladder = (field_make(3), field_make(5), field_make(2, 4))
    res = search(SearchConfig(P311, ladder=ladder, trials=1000))
    assert res.trials <= 3000
    assert res.oracle_status == "confirmed"
    assert res.distances == {"d1": 5, "d2": 6, "free": 6}
    blocks = list(res.markov.blocks)
    assert certify_MDP(blocks[:2], P311).ok and certify_sMDS(blocks, P311).ok
    assert verify_realization(res.realization, blocks)
    assert markov(res.realization, 3) == blocks
    assert res.code.params == P311


def test_r0_path():
    p = CodeParams(2, 1, 2)
    res = search(SearchConfig(p))
    mdp, smds = res.certificates
    assert (mdp.ok, mdp.scanned, mdp.pruned) == (smds.ok, smds.scanned, smds.pruned)
    assert minimal_degree(res.markov) == 2 and check_FM1(res.markov, p) == []


def test_determinism():
    a = search(SearchConfig(CodeParams(4, 2, 1), seed=7)).report()
    b = search(SearchConfig(CodeParams(4, 2, 1), seed=7)).report()
    assert a == b


def test_failure_reports_counters():
    cfg = SearchConfig(CodeParams(4, 1, 2), ladder=(field_make(2), field_make(3)), trials=5)
    with pytest.raises(SearchFailed) as e:
        search(cfg)
    assert e.value.trials == 10


def test_oracle_modes():
    p = CodeParams(4, 2, 1)
    assert search(SearchConfig(p, oracle="off")).report_lines()[-1] == "oracle off"
    skipped = search(SearchConfig(p, oracle="auto", budget=10))
    assert skipped.oracle_status == "skipped" and skipped.distances == {}
    with pytest.raises(Infeasible):
        search(SearchConfig(p, oracle="on", budget=10))
