from __future__ import annotations

import io
import random

import pytest

from convlab.cli import main
from convlab.convcode import CodeParams
from convlab.fileio import MAGIC, ParseError, dumps, loads
from convlab.gf import field_make
from convlab.lsys import code_from_realization, markov, random_realization
from convlab.realize import MarkovSeq

from .fixtures import mdp_311

PROPORTIONAL = """convlab v1
field 3 1 0 1
markov 3 1 2 1
mat 2 1
1
1
mat 2 1
2
2
mat 2 1
0
1
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(map(str, argv)), out=out)
    return code, out.getvalue()


def test_roundtrip_all_kinds():
    rng = random.Random(0)
    F = field_make(2, 3)
    R = random_realization(F, CodeParams(4, 2, 2), rng)
    C = code_from_realization(R)
    seq = MarkovSeq(tuple(markov(R, R.params.M + 1)), R.params)
    for doc in (R, C, seq):
        text = dumps(doc)
        assert text.startswith(MAGIC + "\n")
        back = loads(text)
        assert back == doc if not hasattr(doc, "G") else back.G == doc.G
        assert dumps(back) == text


def test_markov_delta_inferred():
    R = mdp_311()
    text = dumps(MarkovSeq(tuple(markov(R, 3)), R.params)).replace("markov 3 1 2 1", "markov 3 1 2")
    assert loads(text).params.delta == 1
    # a non-generic sequence has a different minimal degree, so the header must say it
    with pytest.raises(ParseError):
        loads(PROPORTIONAL.replace("markov 3 1 2 1", "markov 3 1 2"))


def test_comments_and_layout():
    text = "# header\n" + PROPORTIONAL.replace("mat 2 1\n1\n1", "mat 2 1   1 1  # F_0")
    assert loads(text) == loads(PROPORTIONAL)


@pytest.mark.parametrize("text,line", [
    ("hello\n", 1),
    (PROPORTIONAL.replace("field 3 1 0 1", "field 4 1 0 1"), 2),
    (PROPORTIONAL.replace("2\n2\n", "2\n7\n"), 9),
    (PROPORTIONAL.replace("mat 2 1\n0\n1\n", "mat 1 1\n0\n"), 10),
    (PROPORTIONAL.replace("markov", "marcov"), 3),
    (PROPORTIONAL + "extra\n", 13),
    (PROPORTIONAL.replace("markov 3 1 2 1", "markov 3 1 2 2"), 3),
    (PROPORTIONAL.replace("markov 3 1 2 1", "markov 3 1 3 1"), 12),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        loads(text)
    assert e.value.line == line


def test_certify_markov(tmp_path):
    code, out = run("search", "-n", 3, "-k", 1, "-d", 1, "--out", tmp_path / "s")
    assert code == 0
    code, out = run("certify", tmp_path / "s" / "markov.txt", "--property", "smds")
    assert code == 0 and out.splitlines()[0] == "cert sMDS true"
    code, out = run("certify", tmp_path / "s" / "realization.txt", "--property", "mdp")
    assert code == 0 and out.splitlines()[0] == "cert MDP true"
    code, out = run("certify", tmp_path / "s" / "code.txt", "--property", "smds")
    assert code == 0 and out.splitlines() == ["cert sMDS true", "dcol 2 6"]


def test_search_outputs(tmp_path):
    code, out = run("search", "-n", 3, "-k", 1, "-d", 1, "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "report.txt").read_text() == out
    assert (tmp_path / "distances.txt").read_text() == "dcol 0 3\ndcol 1 5\ndcol 2 6\ndfree 6\n"
    assert (tmp_path / "profile.png").read_bytes()[:4] == b"\x89PNG"


def test_proportional_fixture(tmp_path):
    f = tmp_path / "prop.txt"
    f.write_text(PROPORTIONAL)
    code, out = run("certify", f, "--property", "mdp")
    assert code == 1
    assert out.splitlines()[:2] == ["cert MDP false", "witness rows 3 4 cols 1 2"]


def test_malformed(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text(PROPORTIONAL.replace("2\n2\n", "2\nx\n"))
    code, _ = run("certify", f, "--property", "mdp")
    assert code == 3
    assert "line 9" in capsys.readouterr().err
    assert run("certify", tmp_path / "missing.txt", "--property", "mdp")[0] == 3
    with pytest.raises(SystemExit) as e:
        main(["certify", str(f), "--property", "nope"])
    assert e.value.code == 3


def test_convert_and_distances(tmp_path):
    f = tmp_path / "r.txt"
    f.write_text(dumps(mdp_311()))
    code, text = run("convert", f, "--to", "code")
    assert code == 0 and "params 3 1 1" in text
    g = tmp_path / "c.txt"
    g.write_text(text)
    d_real = run("distances", f)[1]
    d_code = run("distances", g)[1]
    assert d_real == d_code == "dcol 0 3\ndcol 1 5\ndcol 2 6\ndfree 6\n"
    code, back = run("convert", g, "--to", "realization")
    assert code == 0
    h = tmp_path / "r2.txt"
    h.write_text(back)
    assert run("distances", h)[1] == d_real


def test_convert_block_code(tmp_path):
    f = tmp_path / "r0.txt"
    f.write_text("convlab v1\nfield 5 1 0 1\nreal 3 1 0\nmat 0 0\nmat 0 1\nmat 2 0\nmat 2 1\n1\n2\n")
    code, text = run("convert", f, "--to", "code")
    assert code == 0
    assert "gen 3 1 0" in text
    assert run("distances", f)[1] == "dcol 0 3\ndfree 3\n"


def test_budget_exit(tmp_path):
    f = tmp_path / "r.txt"
    f.write_text(dumps(mdp_311()))
    code, out = run("distances", f, "--budget", 3)
    assert code == 2 and out.startswith("infeasible")


def test_figure(tmp_path):
    f = tmp_path / "r.txt"
    f.write_text(dumps(mdp_311()))
    png = tmp_path / "p.png"
    assert run("distances", f, "--jmax", 3, "--figure", png)[0] == 0
    assert png.stat().st_size > 1000


def test_search_reports_identical(tmp_path):
    run("search", "-n", 4, "-k", 2, "-d", 1, "--seed", 3, "--out", tmp_path / "a")
    run("search", "-n", 4, "-k", 2, "-d", 1, "--seed", 3, "--out", tmp_path / "b")
    for name in ("report.txt", "code.txt", "realization.txt", "markov.txt", "distances.txt", "profile.png"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
