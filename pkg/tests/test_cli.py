import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from surgcalc.catalog import ENV_VAR, default_entries, dump_catalog
from surgcalc.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, load_report, main, render, run

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())


def json_out(capsys, argv):
    code = main(argv + ["--json"])
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_code"] == code
    return doc, code


def test_enumerate(capsys):
    doc, code = json_out(capsys, ["enumerate", "<x | x^5>"])
    assert code == EXIT_OK and doc["order"] == 5


def test_enumerate_budget(capsys):
    doc, code = json_out(capsys, ["enumerate", "<x, y | >", "--max-cosets", "50"])
    assert code == EXIT_BUDGET and doc["budget_exceeded"]


def test_construct_rbd(capsys):
    doc, code = json_out(capsys, ["construct", "rbd", "z5_c2"])
    assert code == EXIT_OK
    assert (doc["e"], doc["sigma"], doc["c1sq"], doc["pi1_order"]) == (10, -6, 2, 5)


def test_monodromy(capsys):
    doc, code = json_out(capsys, ["monodromy", "verify", "(a b)^6"])
    assert code == EXIT_OK and doc["identity"] and doc["euler"] == 12
    doc, code = json_out(capsys, ["monodromy", "verify", "a b"])
    assert code == EXIT_FAIL and not doc["identity"]
    doc, _ = json_out(capsys, ["monodromy", "fiber", "(a^5)^(a b)"])
    assert doc["fiber"] == "I5"


def test_usage_errors(capsys):
    assert main(["enumerate", "<x | x^>"]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["construct", "xg", "2"]) == EXIT_USAGE
    assert main(["monodromy", "verify", "a c"]) == EXIT_USAGE
    assert main(["construct", "rbd", "nope"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "column" in err


def test_error_report_is_json(capsys):
    doc, code = json_out(capsys, ["abelianize", "<x | y>"])
    assert code == EXIT_USAGE and "error" in doc


def test_report_round_trip():
    r = run(["construct", "xpq1", "3", "1"])
    back = load_report(json.dumps(r.to_json()))
    assert back == r


def test_render():
    doc = run(["abelianize", "<x, y | x^2, y^3>"]).to_json()
    text = render(doc)
    assert "Z6" in text and "exit 0" in text


def test_catalog_commands(capsys):
    doc, code = json_out(capsys, ["catalog", "list"])
    assert code == EXIT_OK and "E(1)" in {b["label"] for b in doc["blocks"]}
    doc, code = json_out(capsys, ["catalog", "check"])
    assert code == EXIT_OK and all(c["status"] == "pass" for c in doc["claims"])


def test_catalog_env_and_flag(tmp_path, monkeypatch, capsys):
    path = tmp_path / "small.json"
    path.write_text(dump_catalog(default_entries()[:2]), encoding="utf-8")
    monkeypatch.setenv(ENV_VAR, str(path))
    doc, _ = json_out(capsys, ["catalog", "list"])
    assert len(doc["blocks"]) == 2 and doc["source"] == str(path)
    monkeypatch.delenv(ENV_VAR)
    doc, _ = json_out(capsys, ["catalog", "list", "--catalog", str(path)])
    assert len(doc["blocks"]) == 2


def test_jobs_preserve_order():
    one = run(["construct", "rbd", "all", "--jobs", "1"]).payload
    two = run(["construct", "rbd", "all", "--jobs", "2"]).payload
    assert one == two
    assert [d["label"] for d in one["dossiers"]][:2] == ["z5_c2", "z4_c1_a"]


def test_selftest_seeded():
    a = run(["selftest", "--count", "10", "--seed", "7"])
    b = run(["selftest", "--count", "10", "--seed", "7"])
    assert a.payload == b.payload and a.exit_code == EXIT_OK


MATRIX = [
    ["construct", "xg", "2", "1,1", "1,1"],
    ["construct", "xg", "2", "1,1", "0,3"],
    ["construct", "xG", "<x | x^5>"],
    ["construct", "xG", "<a, b | [a, b]>"],
    ["construct", "xG", "<x, y | x^3>", "--moregen"],
    ["construct", "xG-plus", "<x | x^3>"],
    ["construct", "xpq1", "5", "2"],
    ["construct", "xpq23", "2", "3", "5"],
    ["construct", "xpq23", "2", "4", "--torus-z"],
    ["orbifold", "2,3,5"],
    ["monodromy", "verify", "a"],
]


@pytest.mark.parametrize("argv", MATRIX, ids=lambda a: " ".join(a[:3]))
def test_exit_code_follows_claims(argv, capsys):
    doc, code = json_out(capsys, argv)
    statuses = {c["status"] for c in doc.get("claims", [])}
    assert code == (EXIT_FAIL if "fail" in statuses else EXIT_OK)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "surgcalc", "abelianize", "<a, b | [a, b]>"], capture_output=True, text=True)
    assert out.returncode == 0 and "Z + Z" in out.stdout
    out = subprocess.run([sys.executable, "-m", "surgcalc", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("surgcalc")
