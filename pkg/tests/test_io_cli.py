import io
import json
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from apk.cli import main
from apk.ems import validate
from apk.io import (SchemaError, emit_ems, emit_parameter, parse_document, parse_ems,
                    parse_parameter)
from conftest import DATA
from generators import random_valid


def data(name):
    return os.path.join(DATA, name)


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_so13_e2():
    with open(data("so13_e2.json"), encoding="utf-8") as fh:
        E = parse_ems(fh.read())
    assert validate(E, strict=True).ok
    assert str(E.rows()[0].B) == "-5/2"


def test_schema_error_paths():
    doc = {"blocks": [{"rho": "r", "rows": [{"A": "1", "B": "3/4", "l": 0, "eta": 1}]}]}
    with pytest.raises(SchemaError) as exc:
        parse_ems(json.dumps(doc))
    assert exc.value.path == "blocks[0].rows[0].B"
    doc["blocks"][0]["rows"][0] = {"A": "1", "B": "0", "l": 0}
    with pytest.raises(SchemaError, match="missing field 'eta'"):
        parse_ems(json.dumps(doc))
    doc["blocks"][0]["rows"][0] = {"A": "1", "B": "0", "l": 0, "eta": 2}
    with pytest.raises(SchemaError, match="eta"):
        parse_ems(json.dumps(doc))
    with pytest.raises(SchemaError, match="line 1"):
        parse_ems("{")
    with pytest.raises(SchemaError, match="unknown rho"):
        parse_ems(json.dumps({"rhos": [{"id": "a"}], "blocks": [{"rho": "b", "rows": []}]}))


def test_parameter_roundtrip():
    with open(data("sp32_param.json"), encoding="utf-8") as fh:
        text = fh.read()
    psi = parse_parameter(text)
    assert emit_parameter(psi) == text
    assert parse_document(text) == psi


@settings(max_examples=200)
@given(st.integers(0, 10**7))
def test_emit_parse_roundtrip(seed):
    E = random_valid(random.Random(seed))
    text = emit_ems(E)
    assert parse_ems(text) == E
    assert emit_ems(parse_ems(text)) == text


def test_full_row_emits_canonical_eta():
    text = emit_ems(parse_ems(json.dumps(
        {"blocks": [{"rho": "r", "rows": [{"A": 1, "B": 0, "l": 1, "eta": -1}]}]})))
    assert json.loads(text)["blocks"][0]["rows"][0]["eta"] == 1


def test_cli_render_ex1(capsys):
    code, out, _ = run(["render", data("ex1.json")], capsys)
    assert code == 0
    assert out.splitlines()[1:] == [" 1 2 3 4 5 6", " ⊖ ⊕ ⊖", "   ⊲ ⊖ ⊕ ⊳", "     ⊲ ⊲ ⊳ ⊳",
                                    "       ⊖ ⊕"]


def test_cli_validate(capsys, tmp_path):
    assert run(["validate", "--strict", data("so13_e2.json")], capsys)[:2] == (0, "valid\n")
    bad = tmp_path / "bad.json"
    doc = json.load(open(data("ex1.json"), encoding="utf-8"))
    doc["blocks"][0]["rows"][0]["eta"] = 1
    bad.write_text(json.dumps(doc))
    code, _, err = run(["validate", str(bad)], capsys)
    assert code == 1 and "sign" in err


def test_cli_schema_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"blocks": [{"rho": "r", "rows": [{"A": "1", "B": "3/4", "l": 0, "eta": 1}]}]}')
    code, out, err = run(["render", str(bad)], capsys)
    assert code == 1 and out == "" and "blocks[0].rows[0].B" in err
    assert run(["render", str(tmp_path / "missing.json")], capsys)[0] == 1


def test_cli_nonzero(capsys, tmp_path):
    assert run(["nonzero", data("ex1.json")], capsys)[1] == "nonzero\n"
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"blocks": [{"rho": "r", "rows": [
        {"A": 2, "B": 0, "l": 0, "eta": 1}, {"A": 3, "B": 1, "l": 1, "eta": -1}]}]}))
    code, out, _ = run(["nonzero", str(zero)], capsys)
    assert code == 0 and out == "zero\n"
    code, out, _ = run(["nonzero", "--explain", str(zero)], capsys)
    assert out.startswith("zero\n") and "shifted(1)" in out


def test_cli_orders_and_swap(capsys):
    code, out, _ = run(["orders", data("ex1.json")], capsys)
    assert out.splitlines() == ["rho: 1 < 2 < 3 < 4", "rho: 1 < 2 < 4 < 3", "rho: 1 < 4 < 2 < 3"]
    code, out, _ = run(["swap", "--pos", "3", "--render", data("derive_chain.json")], capsys)
    assert code == 0 and out.splitlines()[-2:] == ["     ⊕ ⊖", "   ⊖ ⊕ ⊖"]
    assert run(["swap", "--pos", "1", data("ex1.json")], capsys)[0] == 1


def test_cli_reduce_derive(capsys):
    code, out, _ = run(["reduce", "--render", data("derive_chain.json")], capsys)
    assert out.splitlines()[2:] == [" ⊕ ⊖", "   ⊲ ⊕ ⊳", "   ⊲ ⊕ ⊳", "     ⊖"]
    code, out, _ = run(["derive", data("derive_chain.json")], capsys)
    doc = json.loads(out)
    assert doc["removed"] == ["2"]
    assert doc["result"]["blocks"][0]["rows"][-1] == {"A": "1", "B": "1", "l": 0, "eta": -1}


def test_cli_dual_pipe(capsys, monkeypatch):
    code, once, _ = run(["dual", data("ex_aubert.json")], capsys)
    code, twice, _ = run(["dual", "-"], capsys, stdin=once, monkeypatch=monkeypatch)
    with open(data("ex_aubert.json"), encoding="utf-8") as fh:
        assert twice == fh.read()


def test_cli_shift_and_langlands(capsys):
    code, out, _ = run(["shift", "--t", "1", data("separated.json")], capsys)
    assert json.loads(out)["blocks"][0]["rows"][0]["B"] == "0"
    assert run(["shift", "--t", "-1", data("separated.json")], capsys)[0] == 1
    code, out, _ = run(["langlands", data("separated.json")], capsys)
    assert out == "L(rho|.|^-1; pi(0+))\n"


def test_cli_packet(capsys):
    assert run(["packet", "--param", data("so13_param.json"), "--count"], capsys)[1] == "4\n"
    code, out, _ = run(["packet", "--param", data("sp32_param.json"), "--characters", "--json"], capsys)
    doc = json.loads(out)
    assert doc["count"] == 7
    assert sorted(tuple(m["character"]) for m in doc["members"]).count((-1, -1)) == 4
    code, out, _ = run(["packet", "--param", data("sp32_param.json"), "--characters"], capsys)
    assert out.count("eta_E = (+,+)") == 3 and out.endswith("count: 7\n")


def test_cli_out_file(capsys, tmp_path):
    target = tmp_path / "o.txt"
    code, out, _ = run(["render", "--ascii", "--out", str(target), data("ex1.json")], capsys)
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").splitlines()[2] == " - + -"


def test_cli_internal_error_exit(capsys, monkeypatch):
    import apk.cli as cli

    def boom(*a, **k):
        raise AssertionError("derivative of a nonzero pi(E) came out zero")

    monkeypatch.setattr(cli, "derivative_step", boom)
    assert run(["derive", data("derive_chain.json")], capsys)[0] == 2


def test_cli_deterministic_across_threads():
    env = dict(os.environ)
    outs = []
    for threads in ("1", "3"):
        env["APK_THREADS"] = threads
        proc = subprocess.run([sys.executable, "-m", "apk", "packet", "--param",
                               data("sp32_param.json"), "--characters", "--json"],
                              capture_output=True, env=env, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
