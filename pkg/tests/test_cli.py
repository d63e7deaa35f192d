import json

from redblue.cli import EXIT_CAP, EXIT_CONFIG, EXIT_GRAPH, EXIT_OK, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_max_rbrb_six(capsys):
    code, out, _ = run(capsys, "max", "--pattern", "rbrb_c4", "--n", "6")
    assert code == EXIT_OK and json.loads(out)["max_value"] == 18


def test_formula_rrrb_profile(capsys):
    code, out, _ = run(capsys, "formula", "--name", "rrrb_profile", "--sigma", "0.75")
    assert code == EXIT_OK and json.loads(out)["exact"] == "27/512"
    code, out, _ = run(capsys, "formula", "--name", "rbrb_max", "--n", "8", "--format", "csv")
    assert out == "name,exact,float\nrbrb_max,72,72.0\n"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "max", "--pattern", "rbrb_c4", "--n", "10")[0] == EXIT_CAP
    assert run(capsys, "max", "--pattern", "nope", "--n", "5")[0] == EXIT_CONFIG
    assert run(capsys, "formula", "--name", "nope")[0] == EXIT_CONFIG
    assert run(capsys, "frobnicate")[0] == EXIT_CONFIG
    assert run(capsys, "max", "--pattern", "rbrb_c4", "--n", "12", "--method", "local")[0] == EXIT_CONFIG
    bad = tmp_path / "bad.txt"
    bad.write_text("4\nRRB\n")
    assert run(capsys, "count", "--pattern", "rbrb_c4", "--graph", str(bad))[0] == EXIT_GRAPH
    assert run(capsys, "count", "--pattern", "rbrb_c4", "--graph", str(tmp_path / "missing"))[0] == EXIT_CONFIG


def test_construct_then_count(capsys, tmp_path):
    g = tmp_path / "g.txt"
    assert run(capsys, "construct", "--kind", "partitioned", "--n", "8", "--a", "4", "-o", str(g))[0] == 0
    assert g.read_text().startswith("8\n")
    code, out, _ = run(capsys, "count", "--pattern", "rbrb_c4", "--graph", str(g), "--check")
    assert code == 0 and json.loads(out)["count"] == 72
    # each vertex of the red 5-cycle is the middle of 2 x 2 red-blue paths
    code, out, _ = run(capsys, "count", "--edges", "1-2:R,2-3:B", "--kind", "red_cycle", "--n", "5")
    assert json.loads(out)["count"] == 20
    code, out, _ = run(capsys, "count", "--pattern", "alt_walk_3", "--kind", "red_cycle", "--n", "5")
    assert json.loads(out)["count"] == 80


def test_quasirandom_needs_seed(capsys):
    assert run(capsys, "construct", "--kind", "quasirandom", "--n", "5", "--sigma", "0.5")[0] == EXIT_CONFIG


def test_max_range_csv_and_walks(capsys):
    code, out, _ = run(capsys, "max", "--pattern", "rbr_path", "--n-range", "3:6", "--format", "csv")
    assert out.splitlines() == ["pattern,n,max_value,extremal_count,method",
                                "rbr_path,3,2,2,exhaustive", "rbr_path,4,8,3,exhaustive",
                                "rbr_path,5,20,1,exhaustive", "rbr_path,6,36,12,exhaustive"]
    code, out, _ = run(capsys, "max", "--pattern", "alt_walk_2", "--n", "5")
    assert json.loads(out)["max_value"] == 40


def test_reports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        run(capsys, "max", "--pattern", "rrbb_c4", "--n", "12", "--method", "local", "--seed", "4",
            "--restarts", "2", "--format", "json", "-o", str(p))
    assert a.read_bytes() == b.read_bytes()
    for p in (a, b):
        run(capsys, "profile", "--n", "40", "--seed", "2", "--sigmas", "0.6:0.9:0.1", "--format", "csv", "-o", str(p))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == \
        "sigma,n,seed,rrrb_count,rrrb_over_n4,rrrb_profile,rrrb_over_binom4,rand_Q"
    assert run(capsys, "profile", "--n", "40")[0] == EXIT_CONFIG


def test_relax_modes(capsys):
    code, out, _ = run(capsys, "relax", "--mode", "equalize", "--kind", "quasirandom", "--n", "8",
                       "--sigma", "0.5", "--seed", "1", "--gamma", "1/8")
    j = json.loads(out)
    assert code == 0 and j["terminated"] and j["invariant_violations"] == []
    code, out, _ = run(capsys, "relax", "--mode", "g-profile", "--sigmas", "0.5:0.5:0.1", "--format", "csv")
    assert out.splitlines()[1] == "0.5,0.3125,0.06640625,0.03125"
    assert run(capsys, "relax", "--mode", "equalize", "--kind", "red_cycle", "--n", "5", "--gamma", "x")[0] \
        == EXIT_CONFIG


def test_verify_subset(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--suite", "primary", "--only", "3,9", "-o", str(rep))
    assert code == EXIT_OK and "2/2 criteria passed" in err
    assert json.loads(rep.read_text())["passed"] is True
    assert run(capsys, "verify", "--only", "99")[0] == EXIT_CONFIG


def test_verify_failure_exit(capsys, monkeypatch):
    import redblue.verify as V
    monkeypatch.setattr(V, "CHECKS", [(1, "always fails", lambda: (False, {}))])
    monkeypatch.setattr(V, "_TAKES_WORKERS", set())
    assert run(capsys, "verify")[0] == EXIT_VERIFY


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("REDBLUE_THREADS", "2")
    code, out, _ = run(capsys, "max", "--pattern", "rbrb_c4", "--n", "5")
    assert code == 0 and json.loads(out)["max_value"] == 6
    assert run(capsys, "--threads", "0", "max", "--pattern", "rbrb_c4", "--n", "5")[0] == EXIT_CONFIG
