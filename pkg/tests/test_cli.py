import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

RUN = [sys.executable, "-m", "qf2.cli"]


def run_cli(*args, env_extra=None, check=True):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        RUN + list(args), capture_output=True, text=True, env=env
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"qf2 {' '.join(args)} failed: {proc.stderr}")
    return proc


def load_schema(name):
    with resources.files("qf2.schemas").joinpath(name).open() as fh:
        return json.load(fh)


def test_module_table_text_pins_first_line():
    out = run_cli("module-table", "--order", "3").stdout.splitlines()
    assert out[0] == "sigma_2 * 1 = D2 - 1/2*(2*q4 + 6*q4^2 + 20*q4^3)*D4"
    assert len(out) == 8


def test_module_table_json_series_schema():
    out = json.loads(run_cli("module-table", "--order", "4", "--format", "json").stdout)
    schema = load_schema("series.schema.json")
    assert out["basis"] == ["1", "D2", "D4", "pt"]
    assert len(out["entries"]) == 8
    for entry in out["entries"].values():
        for series in entry:
            jsonschema.validate(series, schema)


def test_invariants_json_and_schema():
    out = run_cli("invariants", "--family", "dD4", "--d-max", "3", "--format", "json")
    rows = json.loads(out.stdout)
    jsonschema.validate(rows, load_schema("invariants.schema.json"))
    assert [r["value"] for r in rows] == ["-1", "-3/2", "-10/3"]


def test_invariants_d2dd4_values():
    out = run_cli("invariants", "--family", "D2+dD4", "--d-max", "2", "--format", "json")
    rows = json.loads(out.stdout)
    assert [r["value"] for r in rows] == ["-1/2", "1", "1"]


def test_invariants_methods_agree():
    closed = run_cli("invariants", "--family", "dD4", "--d-max", "4", "--format", "json").stdout
    assembled = run_cli(
        "invariants", "--family", "dD4", "--d-max", "4", "--method", "assembled", "--format", "json"
    ).stdout
    a, b = json.loads(closed), json.loads(assembled)
    assert [r["value"] for r in a] == [r["value"] for r in b]


def test_loci_json_schema_and_values():
    out = run_cli("loci", "--family", "dD4", "--d", "2", "--method", "both", "--format", "json")
    rows = json.loads(out.stdout)
    jsonschema.validate(rows, load_schema("loci.schema.json"))
    closed = {r["graph"]: r["value"] for r in rows if r["method"] == "closed"}
    assert closed == {"F_2": "3/2", "F_{1,1}": "1", "F_{1}^1": "-4"}


def test_invariants_show_loci():
    out = run_cli(
        "invariants", "--family", "D2+dD4", "--d-max", "2", "--show-loci", "--format", "json"
    )
    rows = json.loads(out.stdout)
    jsonschema.validate(rows, load_schema("invariants.schema.json"))
    last = rows[-1]
    assert {l["graph"]: l["value"] for l in last["loci"]} == {"F'_0": "-3", "F'_1": "4"}


def test_fan_json_schema_and_content():
    out = run_cli("fan", "--format", "json")
    report = json.loads(out.stdout)
    jsonschema.validate(report, load_schema("fan.schema.json"))
    assert report["class_matrix"] == [[1, 1, 2, 0], [0, 0, 1, 1]]
    assert report["primitive_collections"] == [[0, 1], [2, 3]]
    assert report["batyrev_presentation"] == ["x2^2 - q4*x4^2", "2*x2*x4 + x4^2 - q2"]


def test_fan_file_round_trip(tmp_path):
    path = tmp_path / "fan.json"
    path.write_text(
        json.dumps(
            {
                "rays": [[-1, 2], [1, 0], [0, -1], [0, 1]],
                "max_cones": [[1, 3], [3, 0], [0, 2], [2, 1]],
            }
        )
    )
    out = run_cli("fan", "--fan", str(path), "--format", "json")
    assert json.loads(out.stdout)["valid"] is True


def test_fan_malformed_json_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    proc = run_cli("fan", "--fan", str(path), check=False)
    assert proc.returncode == 2
    assert "cannot read fan file" in proc.stderr


def test_fan_invalid_exits_1(tmp_path):
    path = tmp_path / "fan.json"
    path.write_text(json.dumps({"rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2]]}))
    proc = run_cli("fan", "--fan", str(path), check=False)
    assert proc.returncode == 1


def test_lm_integrate_example():
    out = run_cli("lm-integrate", "--b", "3", "--lambda", "2,1", "--psi", "0,1")
    assert out.stdout.strip() == "3"
    proc = run_cli("lm-integrate", "--b", "3", "--lambda", "2,2", check=False)
    assert proc.returncode == 2


def test_batyrev_check_iso():
    out = run_cli("batyrev", "--check-iso", "--order", "5")
    assert "isomorphic" in out.stdout


def test_verify_command():
    out = run_cli("verify", "--order", "5")
    assert "pass" in out.stdout


def test_determinism_byte_identical():
    for args in (
        ("invariants", "--family", "dD4", "--d-max", "4", "--format", "json"),
        ("module-table", "--order", "5", "--format", "json"),
        ("fan", "--format", "json"),
    ):
        assert run_cli(*args).stdout == run_cli(*args).stdout


def test_order_env_override():
    out = run_cli("module-table", "--format", "json", env_extra={"QF2_ORDER": "2"})
    assert json.loads(out.stdout)["order"] == 2


def test_bad_order_env(tmp_path):
    proc = run_cli("module-table", env_extra={"QF2_ORDER": "abc"}, check=False)
    assert proc.returncode != 0
