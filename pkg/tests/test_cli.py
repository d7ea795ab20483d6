import csv
import io
import json
import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renyixent import cli
from renyixent.errors import ParseError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_exponential(capsys):
    code, out, _ = run(capsys, "eval", "--measure", "renyi", "--f1", "exponential{lambda=1}",
                       "--f2", "exponential{lambda=1}", "--alpha", "2")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(math.log(2), abs=1e-6)


def test_eval_constraint_exit_code(capsys):
    code, out, err = run(capsys, "eval", "--measure", "renyi", "--f1", "exponential{lambda=1}",
                         "--f2", "exponential{lambda=3}", "--alpha", "0.5")
    assert code == 2
    assert "λ_h > 0" in err
    assert json.loads(out)["constraint"] == "λ_h > 0"
    assert "Traceback" not in err


def test_eval_shannon_entropy(capsys):
    code, out, _ = run(capsys, "eval", "--measure", "shannon", "--f1", "gaussian{mu=0,var=1}",
                       "--f2", "gaussian{mu=0,var=1}")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.418939, abs=1e-6)


def test_eval_certify_passes(capsys):
    code, out, _ = run(capsys, "eval", "--measure", "natural", "--f1", "gamma{k=2,theta=1}",
                       "--f2", "gamma{k=3,theta=2}", "--alpha", "0.5", "--certify")
    assert code == 0
    assert json.loads(out)["oracle"]["verdict"] == "PASS"


def test_eval_generic_engine_agrees(capsys):
    args = ["eval", "--f1", "beta{a=2,b=3}", "--f2", "beta{a=3,b=2}", "--alpha", "2"]
    _, closed, _ = run(capsys, *args)
    _, generic, _ = run(capsys, *args, "--generic")
    assert json.loads(generic)["value"] == pytest.approx(json.loads(closed)["value"], rel=1e-10)


@pytest.mark.parametrize("argv", [
    ["eval", "--f1", "gaussian{mu=0}", "--alpha", "2"],
    ["eval", "--f1", "gaussian{mu=0,var=1", "--alpha", "2"],
    ["eval", "--f1", "gaussian{mu=0,var=1}", "--alpha", "1"],
    ["eval", "--f1", "gaussian{mu=0,var=1}"],
    ["eval", "--f1", "weibull{k=1}", "--alpha", "2"],
    ["eval", "--f1", "gaussian{mu=0,var=1}", "--f2", "gamma{k=1,theta=1}", "--alpha", "2"],
    ["nonsense"],
    ["verify", "--only", "plots"],
    ["tables", "--families", "weibull"],
])
def test_bad_input_exits_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:") or "usage" in err
    assert "Traceback" not in err


def test_sweep_markdown(capsys):
    code, out, _ = run(capsys, "sweep", "--f1", "gaussian{mu=0,var=1}", "--f2", "gaussian{mu=1,var=1}",
                       "--alphas", "0.5,shannon,2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("| ") and len(lines) == 5


def test_sweep_marks_undefined_orders(capsys):
    code, out, _ = run(capsys, "sweep", "--f1", "exponential{lambda=1}", "--f2", "exponential{lambda=3}",
                       "--alphas", "0.5,2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["status"] for r in rows] == ["undefined: λ_h > 0", "ok"]


def test_tables_csv_header(capsys):
    code, out, _ = run(capsys, "tables", "--families", "gaussian", "--alphas", "0.5,2,3", "--format", "csv")
    assert code == 0
    assert "\r\n" in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(cli.TABLE_COLUMNS)
    assert len(rows) == 4


def test_rate_gauss(capsys):
    code, out, _ = run(capsys, "rate-gauss", "--f", "ar1{rho=0.5,s2=1}", "--g", "white{s2=1}",
                       "--alpha", "2", "--oracle-n", "128")
    rec = json.loads(out)
    assert code == 0
    assert abs(rec["value"] - rec["toeplitz_oracle"]) <= 1e-2


def test_rate_gauss_constraint(capsys):
    code, _, err = run(capsys, "rate-gauss", "--measure", "natural", "--f", "ar1{rho=0.5,s2=1}",
                       "--g", "white{s2=1}", "--alpha", "2")
    assert code == 2 and "error" in err


def test_rate_markov_files(tmp_path, capsys):
    (tmp_path / "P.json").write_text(json.dumps([[0.9, 0.1], [0.5, 0.5]]))
    np.savetxt(tmp_path / "Q.txt", np.full((2, 2), 0.5))
    code, out, _ = run(capsys, "rate-markov", "--P", str(tmp_path / "P.json"), "--Q", str(tmp_path / "Q.txt"),
                       "--alpha", "2", "--oracle-n", "12")
    rec = json.loads(out)
    assert code == 0
    assert abs(rec["value"] - rec["brute_force"]) <= 1e-2


def test_rate_markov_q_not_positive(capsys):
    code, _, err = run(capsys, "rate-markov", "--P", "[[0.9,0.1],[0.5,0.5]]", "--Q", "[[1,0],[0.5,0.5]]",
                       "--alpha", "2")
    assert code == 1
    assert "Q must have positive entries" in err


def test_rows_renormalised_with_log(caplog):
    with caplog.at_level(logging.WARNING, logger="renyixent"):
        rows = cli.normalise_rows(np.array([[0.5, 0.5 + 5e-10], [0.3, 0.7]]), "P")
    np.testing.assert_allclose(rows.sum(axis=1), 1.0, atol=1e-15)
    assert "renormalised" in caplog.text
    with pytest.raises(ParseError):
        cli.normalise_rows(np.array([[0.5, 0.6]]), "P")


def test_verify_only_markov(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--only", "markov", "--alphas", "0.5,2", "-o", str(out))
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["config"]["sections"] == ["markov"]
    assert "0 FAIL" in err


def test_verify_mutation_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--only", "oracle", "--families", "gaussian", "--alphas", "2",
                       "--mutate", "gaussian", "--samples", "20000")
    assert code == 3
    assert "FAIL oracle gaussian alpha=2.0" in err


def test_verify_config_round_trip(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--only", "constraints", "--families", "beta,gamma", "--alphas", "0.5,3",
        "-o", str(first))
    code, _, _ = run(capsys, "verify", "--config", str(first), "-o", str(second))
    assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify_config_rejects_unknown_keys(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"config": {"colour": "red"}}))
    code, _, err = run(capsys, "verify", "--config", str(bad))
    assert code == 1 and "colour" in err


# -- grammar ------------------------------------------------------------------

finite = st.floats(-1e6, 1e6)


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True),
                       st.one_of(finite, st.lists(finite, min_size=1, max_size=3)), max_size=4))
def test_parse_call_round_trip(params):
    body = ",".join(f"{k}={json.dumps(v)}" for k, v in params.items())
    name, parsed = cli.parse_call(f"fam{{{body}}}")
    assert name == "fam"
    assert parsed == params


@pytest.mark.parametrize("text", ["gaussian", "gaussian{mu}", "gaussian{mu=x}", "g{a=1,a=2}", "g{a=[1,2}",
                                  "g{a=True}"])
def test_parse_call_errors(text):
    with pytest.raises(ParseError):
        cli.parse_call(text)


def test_parse_family_text_round_trip():
    for text in ["gaussian{mu=0,var=1}", "mvgaussian{mu=[0,1],cov=[[1,0],[0,1]]}", "beta{a=2,b=3}"]:
        assert cli.parse_family(text).to_text() == text


def test_parse_alpha_grid():
    grid = cli.parse_alpha_grid("0.5, shannon ,2")
    assert [str(a) for a in grid] == ["0.5", "shannon", "2.0"]
    with pytest.raises(ParseError):
        cli.parse_alpha_grid(" , ")
