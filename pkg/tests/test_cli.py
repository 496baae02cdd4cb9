import json

import pytest

from highergauss.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    cat = str(tmp_path / "catalog")

    def go(*argv):
        code = main(["--catalog", cat, *argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    go.catalog = tmp_path / "catalog"
    return go


def test_build_pointed_idempotent(run):
    code, out, _ = run("build", "pointed", "--orders", "5", "--q", "zeta5^1", "--name", "C(Z5,q1)")
    assert code == 0
    path = run.catalog / "C_Z5_q1.json"
    first = path.read_bytes()
    run("build", "pointed", "--orders", "5", "--q", "zeta5^1", "--name", "C(Z5,q1)")
    assert path.read_bytes() == first
    idx = json.loads((run.catalog / "index.json").read_text())
    entry = idx["C_Z5_q1.json"]
    assert entry["name"] == "C(Z5,q1)" and entry["pseudounitary"] is True and len(entry["checksum"]) == 64


def test_build_kac_peterson_and_verify(run):
    assert run("build", "kac-peterson", "--type", "B2", "--level", "4")[0] == 0
    obj = json.loads((run.catalog / "B2_4.json").read_text())
    assert len(obj["labels"]) == 15
    code, out, _ = run("verify", "--suite", "galois", "--category", "B2_4")
    assert code == 0 and "Fail" not in out


def test_build_double_counting_entry(run):
    code, _, _ = run("build", "double", "--group", "S3")
    assert code == 0
    obj = json.loads((run.catalog / "Z_Vec_S3.json").read_text())
    assert obj["tau"]["2"] == 24 and "note" in obj


def test_invariants_table(run):
    run("build", "pointed", "--orders", "5", "--q", "zeta5^1", "--out", "Zp5.json")
    code, out, _ = run("--json", "invariants", "--category", "Zp5.json", "--n-range", "1..10")
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [1, 2, 3, 4, 6, 7, 8, 9]
    code, out, _ = run("--json", "invariants", "--category", "Zp5", "--n-range", "1..5", "--allow-noncoprime")
    rows = json.loads(out)
    assert rows[4]["xi"]["kind"] == "ExactRoot"


def test_verify_condense(run):
    run("build", "metric", "--orders", "2,2", "--q", "1,1", "--b", "0,1:-1", "--name", "Z2xZ2_hyp")
    code, out, _ = run("verify", "--suite", "condense", "--metric-group", "Z2xZ2_hyp", "--H", "(1,0)")
    assert code == 0 and out.startswith("Pass")
    assert run("verify", "--suite", "condense", "--metric-group", "Z2xZ2_hyp", "--H", "(1,1)")[0] == 2
    code, out, _ = run("--json", "condense", "--metric-group", "Z2xZ2_hyp", "--H", "(1,0)")
    assert json.loads(out)["orders"] == []


def test_verify_suites_on_fixture(run):
    run("build", "fixture", "--fixture", "ds3")
    for suite in ("galois", "anomaly", "center", "first-second"):
        code, out, _ = run("verify", "--suite", suite, "--category", "ds3")
        assert code == 0, (suite, out)


def test_verify_rejects_degenerate(run):
    run("build", "pointed", "--orders", "2", "--q", "-1", "--name", "sVec")
    assert run("verify", "--suite", "galois", "--category", "sVec")[0] == 2
    assert run("verify", "--suite", "first-second", "--category", "sVec")[0] == 0


def test_product_rev_fusion_witt(run):
    run("build", "kac-peterson", "--type", "A1", "--level", "2")
    assert run("product", "A1_2", "A1_2", "--out", "sq.json")[0] == 0
    assert run("rev", "A1_2", "--out", "A1_2_rev.json")[0] == 0
    code, out, _ = run("fusion", "A1_2")
    assert "(1) x (1) = (0) + (2)" in out
    code, out, _ = run("--json", "witt-compare", "A1_2", "A1_2_rev")
    assert json.loads(out)["verdict"] == "Distinguished"
    code, out, _ = run("--json", "witt-compare", "A1_2", "A1_2", "--power-a", "2", "--power-b", "2")
    assert json.loads(out)["verdict"] == "Inconclusive"
    code, out, _ = run("--json", "witt-signature", "A1_2", "--power", "16")
    assert set(map(json.dumps, json.loads(out).values())) == {json.dumps({"M": 1, "e": 0})}


def test_validate_and_checksum(run):
    run("build", "fixture", "--fixture", "ds3")
    assert run("validate")[0] == 0
    p = run.catalog / "ds3.json"
    p.write_text(p.read_text().replace('"D(S3)"', '"tampered"'))
    code, out, _ = run("validate")
    assert code == 1 and "checksum" in out
    assert run("invariants", "--category", "ds3")[0] == 2


def test_reproduce(run):
    code, out, _ = run("reproduce", "h27")
    assert code == 0 and "7x^2 + 2x + 7" in out
    code, out, _ = run("--json", "reproduce", "ty-table")
    assert all(r["ok"] for r in json.loads(out)["ty-table"])


def test_input_errors(run):
    assert run("invariants", "--category", "missing")[0] == 2
    assert run("build", "metric", "--orders", "2", "--q", "zeta3^1")[0] == 2
    assert run("bogus")[0] == 2
    assert run("build", "kac-peterson", "--type", "A1", "--level", "0")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "highergauss", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "witt-compare" in r.stdout
