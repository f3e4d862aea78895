import csv
import io
import json
import math

import pytest

from h2contract.cli import ConfigError, build_config, main, read_config_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timestamp(text: str) -> dict:
    doc = json.loads(text)
    doc.pop("timestamp")
    return doc


def test_eval_grid_shape(capsys):
    code, out, _ = run(capsys, "eval", "--family", "pseudo_spherical", "--rho", "1", "--m", "0",
                       "--xi1", "0.1:2:32", "--xi2", f"0:{2 * math.pi}:32:open")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["data"]) == 1024
    assert doc["columns"] == ["xi1", "xi2", "re", "im", "log_abs", "phase"]
    assert doc["config"]["rho"] == 1.0 and doc["config"]["m"] == 0
    assert max(d["xi2"] for d in doc["data"]) < 2 * math.pi


def test_eval_csv_header_echoes_params(capsys):
    code, out, _ = run(capsys, "eval", "--family", "horocyclic", "--rho", "3", "--s", "1",
                       "--points", "0,1;0.5,2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("# rho=3.0") for line in lines)
    rows = list(csv.reader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))
    assert rows[0] == ["xi1", "xi2", "re", "im", "log_abs", "phase"] and len(rows) == 3


def test_eval_out_of_domain_exit_2(capsys):
    code, out, err = run(capsys, "eval", "--family", "horocyclic", "--rho", "3", "--s", "1", "--points", "0,0")
    assert code == 2
    assert "domain" in err and out == ""


def test_eval_horocyclic_value_matches_basis(capsys):
    code, out, _ = run(capsys, "eval", "--family", "horocyclic", "--rho", "3", "--s", "1", "--points", "0,1")
    assert code == 0
    (row,) = json.loads(out)["data"]
    assert row["re"] == pytest.approx(-0.0153418, abs=1e-7)


@pytest.mark.parametrize("argv", [
    ("eval", "--family", "pseudo_spherical"),
    ("eval", "--family", "spherical", "--rho", "1"),
    ("eval", "--family", "pseudo_spherical", "--rho", "x"),
    ("verify", "--suite", "nope"),
    ("contract", "--r-grid", "50,25,100"),
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_verify_manifold(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "manifold", "--seed", "42", "--samples", "1000")
    assert code == 0
    doc = json.loads(out)
    rows = [r for r in doc["rows"] if r["name"].startswith("manifold")]
    assert doc["summary"]["total"] == doc["summary"]["passed"]
    assert all(r["threshold"] == 1e-12 and r["passed"] for r in rows)
    assert len(rows) == 1000
    assert len({r["inputs"]["chart"] for r in rows}) == 7


@pytest.mark.parametrize("suite", ["specfun-oracles", "measure", "ep-ode"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0
    assert json.loads(out)["summary"]["failed"] == 0


def test_verify_helmholtz_single_family(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "helmholtz", "--family", "horocyclic", "--samples", "5")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows and all("horocyclic" in r["name"] for r in rows)
    assert all(r["measured"] <= 1e-5 for r in rows)


def test_verify_failure_exit_1_still_writes(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "measure", "--tol", "1e9", "--out", str(out_path))
    assert code == 1
    doc = json.loads(out_path.read_text())
    assert doc["summary"]["failed"] > 0
    assert all("threshold" in r for r in doc["rows"])


def test_reports_deterministic(capsys):
    argv = ("verify", "--suite", "manifold", "--seed", "7", "--samples", "50")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_timestamp(a) == strip_timestamp(b)
    assert a.replace(json.loads(a)["timestamp"], "") == b.replace(json.loads(b)["timestamp"], "")
    _, c, _ = run(capsys, "verify", "--suite", "manifold", "--seed", "8", "--samples", "50")
    assert strip_timestamp(c)["rows"] != strip_timestamp(a)["rows"]


def test_json_schema_fields(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "ep-ode", "--samples", "2")
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["tool"] == "h2contract" and doc["command"] == "verify"
    assert set(doc["rows"][0]) >= {"name", "inputs", "measured", "threshold", "passed"}


def test_config_files_and_flag_precedence(tmp_path, capsys):
    kv = tmp_path / "c.conf"
    kv.write_text("# comment\nsuite = ep-ode\nsamples = 3\nseed = 5\n")
    js = tmp_path / "c.json"
    js.write_text(json.dumps({"suite": "ep-ode", "samples": 3, "seed": 5}))
    assert read_config_file(str(kv)) == {"suite": "ep-ode", "samples": "3", "seed": "5"}
    cfg_kv = build_config("verify", read_config_file(str(kv)), {})
    cfg_js = build_config("verify", read_config_file(str(js)), {})
    assert cfg_kv == cfg_js
    cfg = build_config("verify", read_config_file(str(kv)), {"samples": "4"})
    assert cfg["samples"] == 4
    code, out, _ = run(capsys, "verify", "--config", str(kv), "--samples", "2")
    assert code == 0
    assert len(json.loads(out)["rows"]) == 4


def test_config_rejects_unknown_and_misplaced_keys(tmp_path):
    with pytest.raises(ConfigError, match="unknown key"):
        build_config("verify", {"bogus": 1}, {})
    with pytest.raises(ConfigError, match="does not apply"):
        build_config("verify", {"r_grid": "1,2"}, {})
    bad = tmp_path / "bad.conf"
    bad.write_text("no equals sign here\n")
    with pytest.raises(ConfigError):
        read_config_file(str(bad))


def test_contract_single_family(capsys):
    code, out, _ = run(capsys, "contract", "--family", "pseudo_spherical", "--r-grid", "50,100,200,400")
    assert code == 0
    doc = json.loads(out)
    slopes = {d["slope"] for d in doc["data"] if d["slope"] is not None}
    assert slopes and all(s <= -0.5 for s in slopes)
    assert {d["R"] for d in doc["data"]} == {50.0, 100.0, 200.0, 400.0}


def test_contract_default_all_families(capsys):
    code, out, _ = run(capsys, "contract")
    assert code == 0
    doc = json.loads(out)
    fams = {d["family"] for d in doc["data"]}
    assert len(fams) == 6
    assert all(r["passed"] for r in doc["rows"])


def test_contract_discrete_spectrum_error_row(capsys):
    code, out, _ = run(capsys, "contract", "--family", "hyperbolic_parabolic", "--k1", "0.6", "--k2", "0.8")
    doc = json.loads(out)
    (row,) = doc["rows"]
    assert "discrete-spectrum case excluded" in row["error"]
    assert code == 2
