import json

from acgraphs.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_alt5(capsys, tmp_path):
    path = tmp_path / "alt5.json"
    code, _, _ = run_cli(
        capsys, "analyze", "--group", "alt:5", "--k", "2", "--mode", "full-ac",
        "--output", str(path),
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["report"]["vertexCount"] == 3599
    assert doc["report"]["componentCount"] == 1
    assert doc["manifest"]["command"] == "analyze"
    assert doc["version"]


def test_analyze_embeds_manifest_and_defaults(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--group", "abelian:3,3", "--k", "2",
                           "--mode", "nielsen")
    assert code == 0
    doc = json.loads(out)
    assert doc["manifest"]["parameters"]["mode"] == {"kind": "nielsen"}
    assert doc["manifest"]["seed"] == 1
    sizes = sorted(c["size"] for c in doc["report"]["components"])
    assert sizes == [24, 24]


def test_analyze_distance_and_diameter(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--group", "abelian:3,3", "--k", "2", "--mode",
        "extended-nielsen", "--diameter", "exact",
        "--distance", "(1,0);(0,1)|(0,1);(1,0)",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["diameter"][0]["value"] == 4
    assert doc["report"]["distances"][0]["value"] is not None


def test_analyze_csv_component_membership(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--group", "abelian:3,3", "--k", "2", "--mode",
        "nielsen", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "vertexCode,vertex,component"
    assert len(lines) == 49  # header + 48 vertices


def test_walk_byte_determinism(capsys, tmp_path):
    path = tmp_path / "walk.json"
    argv = [
        "walk", "--group", "sym:8", "--normal", "derived", "--k", "2",
        "--init", "(0 1)(2 3)", "--budget", "auto", "--samples", "500",
        "--seed", "7", "--output", str(path),
    ]
    assert main(argv) == 0
    first = path.read_bytes()
    assert main(argv) == 0
    assert path.read_bytes() == first
    doc = json.loads(first)
    assert doc["report"]["resolvedBudget"] == 2 * 8 * 3
    assert doc["report"]["samples"] == 500


def test_walk_thread_count_does_not_change_report(capsys, tmp_path):
    base = ["walk", "--group", "sym:4", "--normal", "derived", "--k", "2",
            "--init", "(0 1 2)", "--budget", "30", "--samples", "5000",
            "--seed", "3"]
    p1, p2 = tmp_path / "t1.json", tmp_path / "t2.json"
    assert main(base + ["--threads", "1", "--output", str(p1)]) == 0
    assert main(base + ["--threads", "4", "--output", str(p2)]) == 0
    r1 = json.loads(p1.read_text())["report"]
    r2 = json.loads(p2.read_text())["report"]
    assert r1 == r2
    assert "mixing" in r1


def test_walk_pra(capsys):
    code, out, _ = run_cli(
        capsys, "walk", "--group", "sym:4", "--normal", "whole", "--algorithm",
        "pra", "--k", "2", "--init", "(0 1);(0 1 2 3)", "--budget", "50",
        "--samples", "400", "--seed", "5",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["algorithm"] == "pra"


def test_walk_cayley(capsys):
    code, out, _ = run_cli(
        capsys, "walk", "--group", "sym:4", "--normal", "derived", "--algorithm",
        "cayley", "--k", "1", "--init", "(0 1 2)", "--budget", "40",
        "--samples", "300", "--seed", "5",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["mixing"]["samples"] == 300


def test_stats_distribution_json_and_csv(capsys):
    code, out, _ = run_cli(capsys, "stats", "--cycle-distribution", "4",
                           "--parity", "even")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["distribution"]["support"] == [
        {"cycles": 2, "numerator": 11, "denominator": 12},
        {"cycles": 4, "numerator": 1, "denominator": 12},
    ]
    code, out, _ = run_cli(capsys, "stats", "--cycle-distribution", "4",
                           "--parity", "even", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "cycles,numerator,denominator"


def test_stats_observed_histogram(capsys, tmp_path):
    hist = tmp_path / "hist.json"
    hist.write_text(json.dumps({"2": 917, "4": 83}))
    code, out, _ = run_cli(capsys, "stats", "--observed", str(hist), "--n", "4",
                           "--parity", "even")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["chiSquared"]["pass"] in (True, False)


def test_scan_ak_pair(capsys):
    code, out, _ = run_cli(capsys, "scan", "--group", "sl2:5", "--pair", "ak",
                           "--mode", "full-ac")
    assert code == 0
    doc = json.loads(out)
    rep = doc["report"]
    assert rep["determinant"] == 1
    assert rep["imageIsVertex"] is True
    assert rep["sameComponent"] is True
    assert rep["distance"] >= 1
    assert len(rep["geodesic"]) == rep["distance"]


def test_scan_series(capsys):
    code, out, _ = run_cli(capsys, "scan", "--series", "sl2:3,sl2:5", "--pair",
                           "ak", "--mode", "restricted-ac")
    assert code == 0
    doc = json.loads(out)
    rows = doc["report"]["series"]
    assert [r["spec"] for r in rows] == ["sl2:3", "sl2:5"]
    assert all(r["error"] is None for r in rows)


def test_exit_codes(capsys):
    code, _, err = run_cli(capsys, "analyze", "--group", "nope:1", "--k", "2")
    assert code == 1
    code, _, err = run_cli(capsys, "analyze", "--group", "sym:8", "--k", "3")
    assert code == 3
    code, _, err = run_cli(capsys, "frobnicate")
    assert code == 1
    code, _, err = run_cli(capsys, "scan")
    assert code == 1


def test_verify_smoke_subset(capsys, tmp_path, monkeypatch):
    # run the real command against a reduced catalog to keep this fast
    import acgraphs.verify as verify_mod

    fast = tuple(
        c
        for c in verify_mod.CHECKS
        if c.__name__
        in (
            "check_parse_orders",
            "check_stirling_sums",
            "check_tv_bounds",
            "check_ak_exponent_matrix",
        )
    )
    monkeypatch.setattr(verify_mod, "CHECKS", fast)
    path = tmp_path / "verify.json"
    code = main(["verify", "--corpus", "small", "--output", str(path)])
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["report"]["failed"] == 0
    assert {c["status"] for c in doc["report"]["checks"]} == {"PASS"}
