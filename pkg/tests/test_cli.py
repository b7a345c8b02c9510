import csv
import json

import pytest

from thinsieve.cli import main


def run(args):
    return main([str(a) for a in args])


def test_enumerate_artifact(tmp_path):
    out = tmp_path / "ball.jsonl"
    assert run(["enumerate", "--alphabet", 2, "--norm", 3, "--output", out]) == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert records == [{"matrix": [2, 1, 1, 1], "normSq": 7, "trace": 3, "word": "1,1"}]
    manifest = json.loads((tmp_path / "ball.jsonl.manifest.json").read_text())
    assert manifest["command"] == "enumerate"
    assert "wall_time_s" in manifest


def test_outputs_byte_identical_across_runs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert run(["densities", "--modulus", 15, "--output", out]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_densities_rows(tmp_path):
    out = tmp_path / "densities.csv"
    assert run(["densities", "--modulus", 15, "--output", out]) == 0
    rows = {r["q"]: r for r in csv.DictReader(out.open())}
    assert rows["15"]["beta"] == "5/16"
    assert rows["2"]["beta"] == "2/3"
    assert rows["15"]["sqrt4_count"] == "4"
    assert "12" not in rows  # non-square-free moduli are skipped


def test_class_cycles_disc_1365(tmp_path):
    out = tmp_path / "cycles.json"
    assert run(["class-cycles", "--disc", 1365, "--output", out]) == 0
    payload = json.loads(out.read_text())
    assert payload["cycle_count"] == 8
    assert payload["sign_merged_count"] == 4
    words = {c["period_word"] for c in payload["cycles"]}
    assert words == {"1,35", "5,7", "1,1,1,11", "1,1,1,2,1,2"}


def test_class_census_cli(tmp_path):
    out = tmp_path / "census.json"
    assert run(["class-census", "--disc", 1365, "--alphabet", 35, "--output", out]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["classes"]) == 4


def test_trace_fiber_cli(tmp_path):
    out = tmp_path / "fiber.jsonl"
    assert run(["trace-fiber", "--alphabet", 2, "--trace", 37, "--output", out]) == 0
    assert len(out.read_text().splitlines()) == 6


def test_geodesic_profile_and_arcs(tmp_path):
    arcs = tmp_path / "arcs.csv"
    assert run(["geodesic", "--word", "1,1,1,2,1,2", "--emit", arcs]) == 0
    assert len(arcs.read_text().splitlines()) == 7  # header + 6 rotations
    profile = tmp_path / "profile.json"
    assert run(["geodesic", "--word", "1,35", "--emit", profile]) == 0
    payload = json.loads(profile.read_text())
    assert payload["discriminant"] == 1365
    assert payload["max_height"] == pytest.approx(18.472953201911167)


def test_dimension_and_expsum(tmp_path):
    out = tmp_path / "dim.csv"
    assert run(["dimension", "--alphabets", "2", "--depth", 8, "--output", out]) == 0
    row = next(csv.DictReader(out.open()))
    assert float(row["lower"]) < 0.5313 < float(row["upper"])
    out = tmp_path / "exp.csv"
    assert run(["expsum", "--prime", 5, "--samples", 10, "--output", out]) == 0
    for row in csv.DictReader(out.open()):
        assert abs(float(row["value"])) <= float(row["bound"]) + 1e-9


def test_sieve_remainders_cli(tmp_path):
    out = tmp_path / "rem.csv"
    assert run(["sieve-remainders", "--alphabet", 2, "--norm", 100, "--cutoff", 10, "--output", out]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["q", "A_q", "beta_times_size", "remainder"]
    assert rows[-1][0] == "summary"


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("alphabet=2\nnorm=3\n")
    out = tmp_path / "ball.jsonl"
    assert run(["enumerate", "--config", cfg, "--norm", 3, "--output", out]) == 0
    assert len(out.read_text().splitlines()) == 1
    # flags win over the config file
    out2 = tmp_path / "ball2.jsonl"
    cfg.write_text("alphabet=1\nnorm=3\n")
    assert run(["enumerate", "--config", cfg, "--alphabet", 2, "--norm", 3, "--output", out2]) == 0
    assert out.read_text() == out2.read_text()


def test_exit_codes(tmp_path):
    assert run(["not-a-command"]) == 2
    bad_cfg = tmp_path / "bad.cfg"
    bad_cfg.write_text("no_such_key=1\n")
    assert run(["enumerate", "--config", bad_cfg, "--norm", 3]) == 2
    assert run(["enumerate", "--norm", 3, "--config"]) == 2
    assert run(["enumerate", "--norm", 3, "--config", tmp_path / "missing.cfg"]) == 2
    # caps: square-free SL2 enumeration cap via expsum on a huge prime
    assert run(["expsum", "--prime", 1009, "--samples", 1, "--output", tmp_path / "x.csv"]) == 3
    # invalid values
    assert run(["densities", "--modulus", "-3", "--output", tmp_path / "d.csv"]) == 2


def test_sieve_remainders_bilinear_mode(tmp_path):
    out = tmp_path / "rem_pi.csv"
    code = run(
        ["sieve-remainders", "--use-pi", "--xi-bound", 40, "--aleph-bound", 1e6,
         "--omega-bound", 12, "--cutoff", 10, "--output", out]
    )
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[-1][0] == "summary"
    assert int(rows[-1][1]) == 660  # |Xi| * |Aleph| * |Omega| for these bounds


def test_aleph_cli(tmp_path):
    out = tmp_path / "aleph.jsonl"
    assert run(["aleph", "--bound", 1e6, "--modulus", 2, "--output", out]) == 0
    assert len(out.read_text().splitlines()) == 6
    summary = json.loads((tmp_path / "aleph.summary.json").read_text())
    assert summary["error_at_q"]["2"] == 0.0


def test_dimension_cap_exit_code(tmp_path):
    assert run(["dimension", "--alphabets", "10", "--depth", 9, "--output", tmp_path / "d.csv"]) == 3


def test_squarefree_count_cli(tmp_path):
    out = tmp_path / "sf.csv"
    assert run(["squarefree-count", "--alphabet", 2, "--norm", 100, "--output", out]) == 0
    row = next(csv.DictReader(out.open()))
    assert row["squarefree_count"] == "27"
    assert row["ball_count"] == "98"
    assert row["fraction"] == "27/98"
