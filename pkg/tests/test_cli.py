import json
from pathlib import Path

import pytest

from gwacat import cli, make_weyl, verma_quotient
from gwacat.modules import MatrixModule

GOLDEN = Path(__file__).parent / "golden"


def golden_config(module_path: str) -> dict:
    return {
        "instance": {"kind": "weyl", "p": 2, "n": 2},
        "seed": 0,
        "precision": 2,
        "commands": [
            {"command": "check-instance"},
            {"command": "idempotent", "precision": 2},
            {"command": "torsion", "module": module_path},
            {"command": "roundtrip", "module": module_path},
        ],
    }


def payload_of(reports, passed):
    return {"passed": passed, "reports": [r.to_json() for r in reports]}


def test_report_matches_golden_and_is_deterministic():
    module_path = str(GOLDEN / "verma_weyl22.json")
    runs = []
    for _ in range(2):
        reports, passed = cli.run_config(golden_config(module_path))
        runs.append(json.dumps(payload_of(reports, passed), indent=2, sort_keys=True) + "\n")
    assert runs[0] == runs[1]
    assert runs[0] == (GOLDEN / "report_weyl22.json").read_text()


def test_idempotent_report_contains_e():
    reports, passed = cli.run_config(
        {
            "instance": {"kind": "weyl", "p": 2, "n": 2},
            "commands": [{"command": "idempotent", "precision": 2}],
        }
    )
    assert passed
    details = " ".join(c.detail for c in reports[0].checks)
    assert "2*h^3 + h^2 + 1" in details


def test_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"instance": "weyl:2,2", "commands": [{"command": "check-instance"}]}))
    assert cli.main(["run", "--config", str(cfg)]) == 0
    capsys.readouterr()

    # empty command list: exit 0, empty report
    cfg.write_text(json.dumps({"commands": []}))
    assert cli.main(["run", "--config", str(cfg)]) == 0
    capsys.readouterr()

    # malformed JSON: exit 2
    cfg.write_text("{not json")
    assert cli.main(["run", "--config", str(cfg)]) == 2
    capsys.readouterr()

    # unknown config keys rejected: exit 2
    cfg.write_text(json.dumps({"commands": [], "surprise": 1}))
    assert cli.main(["run", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_exit_code_on_check_failure(tmp_path, capsys):
    # a relation-violating module makes the roundtrip report fail (exit 1)
    inst = make_weyl(2, 2)
    M = verma_quotient(inst, 0, 4)
    bad = MatrixModule(inst, 4, M.H, M.Y, M.X)  # x and y swapped
    mod_file = tmp_path / "bad_module.json"
    mod_file.write_text(json.dumps(bad.to_json()))
    rc = cli.main(["roundtrip", "--instance", "weyl:2,2", "--module", str(mod_file)])
    capsys.readouterr()
    assert rc == 1


def test_out_files(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"instance": "weyl:2,2", "commands": [{"command": "check-instance"}]}))
    out = tmp_path / "reports"
    assert cli.main(["run", "--config", str(cfg), "--out", str(out), "--json"]) == 0
    capsys.readouterr()
    data = json.loads((out / "report.json").read_text())
    assert data["passed"] is True
    assert (out / "report.txt").read_text().startswith("instance validation")


def test_instance_string_parsing():
    assert cli._parse_instance_string("quantized:5,2,4,2") == {
        "kind": "quantized", "m": 5, "u": 2, "l": 4, "t": 2,
    }
    with pytest.raises(cli.ConfigError):
        cli._parse_instance_string("weyl:2")
    with pytest.raises(cli.ConfigError):
        cli._parse_instance_string("mystery:1,2")
