import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from torsionspin.catalog import build_s3, dump_space
from torsionspin.cli import _exit_code, main

SCHEMA = json.loads(resources.files("torsionspin").joinpath("data/report_schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_json_schema_and_determinism(capsys):
    code, first, _ = run(capsys, "verify", "s3", "--format", "json")
    assert code == 0
    data = json.loads(first)
    jsonschema.validate(data, SCHEMA)
    assert data["report_version"] == 1 and data["target"] == "s3"
    assert data["summary"]["failed"] == 0 and data["summary"]["total"] == len(data["checks"])
    _, second, _ = run(capsys, "verify", "s3", "--format", "json")
    assert first == second


@pytest.mark.parametrize("target", ["b7", "nk6-table", "npg2-table"])
def test_catalog_targets_pass(capsys, target):
    code, out, _ = run(capsys, "verify", target, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert code == 0 and data["summary"]["failed"] == 0


def test_b7_float_mode(capsys):
    code, out, _ = run(capsys, "verify", "b7", "--float", "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert code == 0 and data["arithmetic"] == "float"
    assert {c["exact_or_float"] for c in data["checks"]} == {"float"}


def test_only_prefix(capsys):
    code, out, _ = run(capsys, "verify", "b7", "--only", "b7.nomizu", "--format", "json")
    data = json.loads(out)
    ids = [c["check_id"] for c in data["checks"]]
    assert code == 0 and ids and all(i.startswith("b7.nomizu") for i in ids)
    assert data["summary"]["total"] == len(ids) == 9


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "s3", "--only", "s3.ricci")
    assert code == 0
    assert out.splitlines()[0] == "target: s3  arithmetic: exact"
    body = [l for l in out.splitlines()[1:-1] if not l.startswith("note:")]
    assert len(body) == 4 and all(line.startswith("[PASS") for line in body)
    assert out.splitlines()[-1] == "summary: 4 passed, 0 failed, 0 skipped, 4 total"


def test_fuzz_counts(capsys):
    code, out, _ = run(capsys, "fuzz", "--dim", "7", "--trials", "100", "--seed", "42", "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert code == 0 and data["summary"] == {"total": 700, "passed": 700, "failed": 0, "skipped": 0}
    _, again, _ = run(capsys, "fuzz", "--dim", "7", "--trials", "100", "--seed", "42", "--format", "json")
    assert again == out
    _, other, _ = run(capsys, "fuzz", "--dim", "7", "--trials", "100", "--seed", "43", "--format", "json")
    assert other != out


def test_fuzz_edge_cases(capsys):
    code, out, _ = run(capsys, "fuzz", "--dim", "5", "--trials", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["checks"] == [] and data["summary"]["total"] == 0
    code, out, _ = run(capsys, "fuzz", "--dim", "3", "--trials", "2", "--format", "json")
    ids = [c["check_id"] for c in json.loads(out)["checks"]]
    assert code == 0 and any(i.endswith("sigma_zero") for i in ids)
    code, _, err = run(capsys, "fuzz", "--dim", "11", "--trials", "1")
    assert code == 126 and err.startswith("error:")


def test_unknown_target(capsys):
    code, out, err = run(capsys, "verify", "no-such-space")
    assert code == 126 and out == "" and "error" in err


def test_verify_json_file(capsys, tmp_path):
    path = tmp_path / "sphere.json"
    path.write_text(json.dumps(dump_space(build_s3())))
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert code == 0 and data["summary"]["failed"] == 0 and data["checks"]
    path.write_text("{broken")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 126 and "ParseError" in err


def test_exit_code_cap():
    assert [_exit_code(k) for k in (0, 1, 7, 125, 126, 4000)] == [0, 1, 7, 125, 125, 125]


def test_flat_space_with_explicit_torsion(capsys, tmp_path):
    # abelian R^3 with a constant 3-form
    data = {"dim_k": 0, "dim_m": 3, "brackets": [], "torsion": [[[0, 1, 2], "1"]]}
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0 and report["summary"]["failed"] == 0
    assert report["target"] == "flat.json"


def test_estimates(capsys):
    code, out, _ = run(capsys, "estimates", "--n", "7", "--sca", "189/10", "--tnorm2", "7/5", "--gamma=-7/sqrt5")
    assert code == 0
    assert "beta_univ = 49/20" in out and "beta_tw = 49/20" in out
    assert "torsion inequality: equality" in out and "real Killing spinor flag: set" in out
    code, out, _ = run(capsys, "estimates", "--n", "7", "--sca", "189/10", "--tnorm2", "7/5",
                       "--gamma-sq", "99/10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["inequalities"]["killing_flag"] is False
    assert data["inequalities"]["torsion_status"] == "violated"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torsionspin", "verify", "s3", "--only", "s3.scalar"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "s3.scalar.g" in proc.stdout
