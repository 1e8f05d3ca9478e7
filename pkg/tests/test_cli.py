from __future__ import annotations

import json
import subprocess
import sys

import pytest

from g2skein.cli import EXIT_ENGINE, EXIT_INPUT, EXIT_OK, run
from g2skein.qalg import parse_ratfunc
from g2skein.skein import evaluate_closed
from g2skein.web import elementary, glue, mirror


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def theta_file(tmp_path):
    v = elementary("vertex211")
    w = glue(v, mirror(v), 3)
    p = tmp_path / "theta.json"
    p.write_text(w.dumps())
    return p, w


def test_dims(capsys):
    code, out, _ = call(capsys, "dims", "--json")
    assert code == EXIT_OK
    assert json.loads(out) == {"1111": 4, "1212": 3, "2222": 5}


def test_eval(capsys, theta_file):
    path, w = theta_file
    code, out, _ = call(capsys, "eval", "--web", str(path))
    assert code == EXIT_OK
    assert parse_ratfunc(out.strip()) == evaluate_closed(w)
    code, out, _ = call(capsys, "eval", "--web", str(path), "--json", "--q1")
    data = json.loads(out)
    assert data["q1"] == str(evaluate_closed(w).eval_at(1))
    assert set(data) >= {"text", "num", "den"}


def test_eval_rejects_bad_input(capsys, tmp_path):
    assert call(capsys, "eval", "--web", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "eval", "--web", str(bad))[0] == EXIT_INPUT
    open_web = tmp_path / "open.json"
    open_web.write_text(elementary("vertex111").dumps())
    code, _, err = call(capsys, "eval", "--web", str(open_web))
    assert code == EXIT_INPUT and "closed" in err


def test_invariant(capsys):
    code, out, _ = call(capsys, "invariant", "--braid", "", "--colors", "1", "--q1")
    assert (code, out.strip()) == (EXIT_OK, "7")
    code, out, _ = call(capsys, "invariant", "--braid", "1 1 1", "--colors", "1,1", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and "laurent" in data


@pytest.mark.parametrize("argv", [
    ["invariant", "--braid", "1", "--colors", "1,2"],
    ["invariant", "--braid", "1 x", "--colors", "1,1"],
    ["invariant", "--braid", "1", "--colors", "1,3"],
    ["verify", "--suite", "nothing"],
    ["verify", "--suite", "torus", "--nmax", "-1"],
    [],
])
def test_input_errors(capsys, argv):
    assert call(capsys, *argv)[0] == EXIT_INPUT


def test_engine_give_up(capsys, monkeypatch):
    monkeypatch.setenv("G2SKEIN_TERM_CAP", "1")
    code, _, err = call(capsys, "invariant", "--braid", "1 2 1 2", "--colors", "1,1,1")
    assert code == EXIT_ENGINE
    assert "cap" in err


def test_verify_relations(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "relations", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"] and data["suite"] == "relations"


def test_verify_torus(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "torus", "--nmax", "2")
    assert code == EXIT_OK
    assert out.strip().endswith("torus: ok")


def test_tables(capsys):
    code, out, _ = call(capsys, "tables", "--rules", "--json")
    rows = json.loads(out)
    assert code == EXIT_OK and any(r["name"] == "loop-1" for r in rows)
    code, out, _ = call(capsys, "tables", "--projectors")
    assert code == EXIT_OK and "End22[2w2]" in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "g2skein.cli", "dims"], capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert r.stdout.split() == ["1111:4", "1212:3", "2222:5"]
