import io
import json
import subprocess
import sys

import pytest

from golden import P1_FACTORS
from quarticdyn.cli import RunConfig, UsageError, render, run_command


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv + ["--format", "json"])
    assert code == 0, err
    return json.loads(out)


def test_pn_one():
    doc = run_json(["pn", "1"])
    assert doc["P"]["coefficients"] == [0, 8, 0, 8, 1, -4, 6, -4, 1]
    assert doc["P"]["degree"] == 8


def test_factor_one():
    doc = run_json(["factor", "1"])
    got = [f["factor"]["coefficients"] for f in doc["factors"]]
    assert got == [list(g.coeffs) for g in P1_FACTORS]
    assert [f["unit_roots"] for f in doc["factors"]] == [0, 0, 1, 2]
    assert doc["factors"][0]["involution_partner"] == 1


def test_classrel_two():
    doc = run_json(["classrel", "2"])
    assert (doc["lhs"], doc["rhs"], doc["equal"]) == (12, 12, True)


def test_classrel_four_needs_no_resultant(tmp_path):
    code, out, _ = run(["classrel", "4", "--cache-dir", str(tmp_path), "--format", "json"])
    assert code == 0
    assert json.loads(out)["lhs"] == 240
    assert list(tmp_path.iterdir()) == []


def test_text_output_is_key_value():
    code, out, _ = run(["classrel", "1"])
    assert code == 0
    assert "lhs: 3" in out and "rhs: 3" in out and "equal: true" in out


def test_usage_errors():
    assert run(["bogus"])[0] == 2
    assert run([])[0] == 2
    assert run(["pn", "1", "--precision", "8"])[0] == 2
    assert run(["pn", "1", "--nmax", "5"])[0] == 2
    assert run(["pn", "0"])[0] == 2
    assert run(["pn", "1", "--format", "xml"])[0] == 2
    assert run(["verify-isogeny", "--trials", "3", "--primes", str(2 ** 61 - 1)])[0] == 2


def test_capacity_errors():
    code, _, err = run(["pn", "4", "--nmax", "3"])
    assert code == 4 and "capacity" in err
    assert run(["classrel", "7"])[0] == 4


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(precision=300)
    with pytest.raises(UsageError):
        RunConfig(threads=0)
    cfg = RunConfig()
    assert (cfg.precision, cfg.nmax, cfg.seed, cfg.format) == (64, 3, 0, "text")


def test_determinism():
    a = run(["orbits", "2", "--format", "json"])
    b = run(["orbits", "2", "--format", "json"])
    assert a[0] == 0 and a[1] == b[1]
    c = run(["verify-series", "--trials", "8", "--seed", "5"])
    d = run(["verify-series", "--trials", "8", "--seed", "5"])
    assert c[0] == 0 and c[1] == d[1]


def test_orbits_and_fixedpoints():
    doc = run_json(["orbits", "1"])
    assert doc["orbit_count"] == 3 and doc["point_count"] == 3
    doc = run_json(["fixedpoints"])
    assert doc["exceptional"] == [0, -1]
    assert sorted(o["discriminant"] for o in doc["unit_fixed_points"]) == [7, 15, 15]
    assert doc["count"] == 5


def test_label_two():
    doc = run_json(["label", "2"])
    assert doc["discriminants"] == [39, 55, 63]
    assert all(len(r["witnesses"]) == 3 for r in doc["labels"])


def test_report_one():
    doc = run_json(["report", "1"])
    assert doc["discriminants"] == [7, 15]
    cross = doc["cross_checks"]
    assert cross["unit_roots"] == 3 and cross["degree_ok"]


def test_verify_isogeny_small():
    doc = run_json(["verify-isogeny", "--trials", "5"])
    assert doc["ok"] and len(doc["identities"]) == 7


def test_cache_admin(tmp_path):
    cd = ["--cache-dir", str(tmp_path), "--format", "json"]
    code, out, _ = run(["cache", "verify"] + cd)
    assert code == 0 and json.loads(out)["count"] == 0
    assert run(["pn", "2"] + cd)[0] == 0
    doc = json.loads(run(["cache", "verify"] + cd)[1])
    names = {e["file"] for e in doc["entries"]}
    assert {"R_1.txt", "R_2.txt", "P_2.txt"} <= names
    assert all(e["status"] == "ok" for e in doc["entries"])
    (tmp_path / "R_2.txt").write_text("R 2 1\n1 0 1\n")
    code, _, err = run(["cache", "verify"] + cd)
    assert code == 3 and "R_2.txt" in err
    assert json.loads(run(["cache", "clear"] + cd)[1])["removed"] == len(names)
    assert json.loads(run(["cache", "list"] + cd)[1])["entries"] == []


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("QUARTICDYN_CACHE_DIR", str(tmp_path))
    assert run(["pn", "1"])[0] == 0
    assert (tmp_path / "P_1.txt").exists()


def test_render_formats():
    doc = {"a": 1, "b": [1, 2], "c": {"d": None, "e": True}, "f": [{"g": 2}]}
    assert json.loads(render(doc, "json")) == doc
    text = render(doc, "text")
    assert text.splitlines() == ["a: 1", "b: [1, 2]", "c:", "  d: none", "  e: true", "f:", "  -", "    g: 2"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quarticdyn", "classrel", "1", "--format", "json"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["equal"] is True
