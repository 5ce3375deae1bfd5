import json

import spanner1d as sp
from spanner1d.cli import main


def test_build_writes_files(tmp_path, capsys):
    out = tmp_path / "g16"
    assert main(["build", "--n", "16", "--ell", "1", "--seed", "7", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "n=16" in text and "edges=78" in text and "seed=7" in text
    for suffix in (".edges", ".scheme.json", ".points"):
        assert (tmp_path / f"g16{suffix}").exists()
    assert sp.load_points(tmp_path / "g16.points").n == 16


def test_build_rejects_zero_points(tmp_path, capsys):
    assert main(["build", "--n", "0", "--out", str(tmp_path / "x")]) == 2
    assert "error:" in capsys.readouterr().err


def test_build_requires_a_point_source(tmp_path, capsys):
    assert main(["build", "--out", str(tmp_path / "x")]) == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0


def test_epsilon_matches_explicit_depth(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["build", "--n", "16", "--ell", "1", "--seed", "7", "--out", str(a)]) == 0
    assert main(["build", "--n", "16", "--epsilon", "0.5", "--seed", "7", "--out", str(b)]) == 0
    assert (tmp_path / "a.edges").read_text() == (tmp_path / "b.edges").read_text()


def test_build_from_points_file(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    sp.write_points(sp.generate_points(20, "uniform", 3), pts)
    assert main(["build", "--points", str(pts), "--out", str(tmp_path / "g")]) == 0
    assert "n=20" in capsys.readouterr().out


def test_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "g"
    main(["build", "--n", "64", "--ell", "1", "--out", str(out)])
    capsys.readouterr()
    report = tmp_path / "rep.json"
    code = main(
        ["verify", "--graph", str(out), "--random-k", "3", "--seed", "5",
         "--report", str(report)]
    )
    assert code == 0
    assert capsys.readouterr().out.startswith("PASS")
    doc = json.loads(report.read_text())
    assert doc["pass"] is True and doc["n"] == 64 and doc["seed"] == 5


def test_verify_fresh_build_with_failure_file(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("3, 7\n")
    code = main(["verify", "--n", "16", "--ell", "1", "--failures", str(f)])
    assert code == 0
    assert "|F|=2" in capsys.readouterr().out


def test_verify_flags_tampered_edge_list(tmp_path, capsys):
    out = tmp_path / "g"
    main(["build", "--n", "16", "--ell", "1", "--out", str(out)])
    edges = tmp_path / "g.edges"
    kept = [ln for ln in edges.read_text().splitlines() if ln != "3 4"]
    assert len(kept) == 77
    edges.write_text("\n".join(kept) + "\n")
    assert main(["verify", "--graph", str(out)]) == 1
    text = capsys.readouterr().out
    assert "FAIL" in text and "(3, 4)" in text


def test_verify_failure_model_flags(tmp_path, capsys):
    assert main(["verify", "--n", "64", "--ell", "2", "--wipe-half", "1:3"]) == 0
    assert main(["verify", "--n", "64", "--ell", "1", "--wipe-interval", "10:20"]) == 0
    assert main(["verify", "--n", "64", "--ell", "1", "--wipe-half", "5:1"]) == 2
    assert main(["verify", "--n", "64", "--ell", "1", "--wipe-interval", "bad"]) == 2


def test_verify_bad_failure_index(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("99\n")
    assert main(["verify", "--n", "16", "--failures", str(f)]) == 2


def test_scaling_outputs(tmp_path, capsys):
    csv_path, json_path = tmp_path / "s.csv", tmp_path / "s.json"
    code = main(
        ["scaling", "--ns", "16,36,64", "--ells", "1", "--csv", str(csv_path),
         "--json", str(json_path)]
    )
    assert code == 0
    text = capsys.readouterr().out
    assert "slope ell=1" in text
    header, *rows = csv_path.read_text().splitlines()
    assert header.split(",")[:4] == ["n", "ell", "m", "edge_count"]
    assert len(rows) == 3
    doc = json.loads(json_path.read_text())
    assert [r["edge_count"] for r in doc["rows"]] == [78, 300, 756]
    assert "1" in doc["slopes"]


def test_scaling_single_size_has_no_slope(capsys):
    assert main(["scaling", "--ns", "64", "--ells", "1"]) == 0
    assert "slope" not in capsys.readouterr().out


def test_closure_stats_normal(tmp_path, capsys):
    json_path = tmp_path / "c.json"
    code = main(
        ["closure-stats", "--n", "100", "--ell", "1", "--k", "5", "--trials", "50",
         "--json", str(json_path)]
    )
    assert code == 0
    doc = json.loads(json_path.read_text())
    assert doc["summary"]["trials"] == 50
    assert doc["summary"]["offenders"] == 0
    assert all(r["within_bound"] for r in doc["rows"])


def test_closure_stats_flags_bound_breach(capsys):
    """A lone failure in the size-1 trailing half of n=145 exceeds 6x."""
    code = main(
        ["closure-stats", "--n", "145", "--ell", "1", "--k", "1", "--trials", "60",
         "--seed", "4"]
    )
    assert code == 1
    text = capsys.readouterr().out
    assert "bound exceeded" in text and "trial=40" in text


def test_closure_stats_bad_arguments(capsys):
    assert main(["closure-stats", "--n", "100", "--k", "0"]) == 2
    assert main(["closure-stats", "--n", "100", "--k", "5", "--trials", "0"]) == 2


def test_cli_reproducible_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    argv = ["build", "--n", "100", "--ell", "2", "--model", "expgaps", "--seed", "13"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    for suffix in (".edges", ".scheme.json", ".points"):
        assert (tmp_path / f"a{suffix}").read_text() == (tmp_path / f"b{suffix}").read_text()
