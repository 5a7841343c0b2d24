import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from hauptraces import cli
from hauptraces.serialize import dumps
from hauptraces.verify import VerificationReport


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_class_number_prints_fraction(capsys):
    code, out, _ = run(["class-number", "--level", "2", "--disc", "-4"], capsys)
    assert code == 0 and out.strip() == "1/2"


def test_unsupported_level_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["reduced-forms", "--level", "99", "--disc", "-4"])
    assert exc.value.code == 2
    assert "unsupported level" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    for argv in (["class-number", "--level", "2", "--disc", "-5"],
                 ["modpoly", "--level", "4", "--n", "2"],
                 ["verify", "--level", "2", "--n-range", "1..3", "--theorems", "bogus"],
                 ["nonsense"]):
        try:
            code = cli.main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 2, argv
    capsys.readouterr()


def test_verify_all_pass(capsys):
    code, out, _ = run(["verify", "--level", "5", "--n-range", "1..10", "--theorems", "cor24"], capsys)
    assert code == 0 and "0 failed" in out


def test_verify_failure_exits_1(monkeypatch, capsys):
    import hauptraces.verify as verify

    def fake(*args, **kwargs):
        return [VerificationReport(2, 1, "cor24.1", 1, 2, 1, "fail"),
                VerificationReport(2, 2, "cor24.1", 1, 1, 0, "pass")]

    monkeypatch.setattr(verify, "run_suite", fake)
    code, _, _ = run(["verify", "--level", "2", "--n-range", "1..2", "--theorems", "cor24"], capsys)
    assert code == 1


JSON_COMMANDS = [
    ["hauptmodul", "--level", "3", "--terms", "5", "--json"],
    ["reduced-forms", "--level", "5", "--disc", "-8", "--json"],
    ["reduced-forms", "--level", "5", "--disc", "-8", "--method", "cosets", "--json"],
    ["class-number", "--level", "3", "--disc", "-12", "--json"],
    ["trace", "--level", "5", "--disc", "-4", "--json"],
    ["j-value", "--level", "2", "--form", "2,2,1", "--json"],
    ["j-value", "--level", "4", "--cusp", "1/2", "--json"],
    ["cusps", "--level", "4", "--n", "3", "--json"],
    ["modpoly", "--level", "3", "--n", "2", "--diagonal", "--json"],
    ["verify", "--level", "2,3", "--n-range", "1..4", "--json"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: a[0])
def test_json_documents_round_trip(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert dumps(json.loads(out)) == out


def test_json_contents(capsys):
    _, out, _ = run(["reduced-forms", "--level", "5", "--disc", "-8", "--json"], capsys)
    assert sorted(map(tuple, json.loads(out)["forms"])) == [(1, 0, 2), (2, 0, 1), (3, -2, 1), (3, 2, 1), (6, -4, 1), (6, 4, 1)]
    _, out, _ = run(["trace", "--level", "5", "--disc", "-4", "--json"], capsys)
    assert json.loads(out)["t"] == [-5, 1]
    _, out, _ = run(["modpoly", "--level", "3", "--n", "2", "--json"], capsys)
    assert json.loads(out)["coefficients"][0] == [-46224, 2268, 108, 1]


def test_csv_output(capsys):
    _, out, _ = run(["cusps", "--level", "4", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "cusp,width,j_N"
    assert len(out.splitlines()) == 4


def test_fundamental_domain_files(tmp_path, capsys):
    svg, js = tmp_path / "d.svg", tmp_path / "d.json"
    code, _, _ = run(["fundamental-domain", "--level", "13", "--svg", str(svg), "--json", str(js)], capsys)
    assert code == 0
    ET.parse(svg)
    doc = json.loads(js.read_text())
    assert len(doc["arcs"]) == 12
    with pytest.raises(SystemExit) as exc:
        cli.main(["fundamental-domain", "--level", "3"])
    assert exc.value.code == 2


def test_verify_report_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(["verify", "--level", "7", "--n-range", "1..3", "--out", str(out)], capsys)
    assert code == 0
    docs = json.loads(out.read_text())
    assert {"level", "n", "theorem", "lhs", "rhs", "abs_error", "pass", "runtime_ms"} <= set(docs[0])


def test_config_from_env():
    assert cli.Config.from_env({}).default_prec == 128
    assert cli.Config.from_env({"HAUPTRACES_PREC": "200"}).default_prec == 200
    with pytest.raises(ValueError):
        cli.Config(default_prec=20)
    with pytest.raises(ValueError):
        cli.Config(modpoly_guard=0)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hauptraces", "class-number", "--level", "3", "--disc", "-3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "1/3"
