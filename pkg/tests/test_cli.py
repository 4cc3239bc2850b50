import json

import pytest

from spectree.cli import main
from spectree.generate import enumerate_free_trees
from spectree.graph import encode_graph6
from spectree.measures import degree_power


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments_prints_usage(capsys):
    code, out, err = run(capsys)
    assert code != 0 and "usage" in err


def test_unknown_subcommand_and_bad_flag(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code != 0
    with pytest.raises(SystemExit) as e:
        main(["survey", "--bogus"])
    assert e.value.code != 0


def test_help_lists_flags(capsys):
    with pytest.raises(SystemExit):
        main(["survey", "--help"])
    out = capsys.readouterr().out
    for flag in ("--from", "--to", "--conjectures", "--cache", "--threads", "--sigma", "--precision", "--format"):
        assert flag in out


def test_gen_formats(capsys):
    code, out, _ = run(capsys, "gen", "--n", "6")
    assert code == 0 and len(out.split()) == 6
    code, out, _ = run(capsys, "gen", "--n", "5", "--format", "levels")
    assert out.splitlines()[0] == "0 1 1 1 1"
    code, out, _ = run(capsys, "gen", "--n", "4", "--rooted")
    assert len(out.split()) == 4 and all(":" in ln for ln in out.split())


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "4", "--format", "json")
    rows = json.loads(out)
    assert [r["f2"] for r in rows] == [12, 10]
    assert rows[0]["q1"] == "4.0000000000"
    code, out, _ = run(capsys, "invariants", "--graph6", "Bg")
    assert "| Bg | 0 1 1 | 6 |" in out


def test_survey_table(capsys):
    code, out, _ = run(capsys, "survey", "--from", "4", "--to", "10", "--conjectures", "cj1", "--threads", "1")
    assert code == 0
    rows = [ln.split("|")[1:4] for ln in out.strip().splitlines()[2:]]
    assert [[c.strip() for c in r] for r in rows] == [
        ["4", "3", "0"], ["5", "6", "0"], ["6", "21", "0"], ["7", "66", "0"],
        ["8", "276", "2"], ["9", "1128", "11"], ["10", "5671", "89"],
    ]


def test_survey_output_is_byte_identical(capsys, tmp_path):
    cache = str(tmp_path / "c.jsonl")
    _, a, _ = run(capsys, "survey", "--from", "5", "--to", "8", "--format", "csv", "--cache", cache)
    _, b, _ = run(capsys, "survey", "--from", "5", "--to", "8", "--format", "csv", "--cache", cache)
    _, c, _ = run(capsys, "survey", "--from", "5", "--to", "8", "--format", "csv", "--threads", "8")
    assert a == b == c


def test_verify_figure2_pair(capsys):
    a, b = [encode_graph6(t).decode() for t in enumerate_free_trees(6) if degree_power(t, 2) == 20]
    code, out, _ = run(capsys, "verify", "--graph6", a, "--graph6", b, "--conjecture", "cj2")
    assert code == 0
    assert "verdict: counterexample" in out
    lines = dict(ln.split(": ", 1) for ln in out.splitlines())
    assert float(lines["gap f2"].split()[0]) == 0.0
    assert abs(float(lines["gap q1"].split()[0]) - 0.088456) < 2e-5


def test_verify_needs_two(capsys):
    code, _, err = run(capsys, "verify", "--graph6", "Bg", "--conjecture", "cj1")
    assert code != 0 and "two" in err


def test_bad_graph6_is_reported(capsys):
    with pytest.raises(SystemExit) as e:
        main(["invariants", "--graph6", "Bw"])
    assert e.value.code != 0


def test_cospectral_search_and_coalesce(capsys):
    code, out, _ = run(capsys, "cospectral-search", "--n", "9", "--kind", "adjacency")
    assert code == 0
    (line,) = out.strip().splitlines()
    a, b = line.split()[:2]
    code, out, _ = run(capsys, "coalesce", "--seed-a", a, "--seed-b", b, "--attach", "A_:0", "--attach", "Bg:0",
                       "--kind", "adjacency")
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    assert all("certified=adjacency" in ln for ln in out.splitlines())


def test_coalesce_rejects_non_seeds(capsys):
    code, _, err = run(capsys, "coalesce", "--seed-a", "Bg:0", "--seed-b", "Bg:1", "--attach", "@:0")
    assert code != 0 and "cospectrally rooted" in err
