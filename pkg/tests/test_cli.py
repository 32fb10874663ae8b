"""Command-line behavior: outputs, exit codes, determinism."""

import json
import math

import numpy as np
import pytest

from thetalab.cli import main
from thetalab.experiments import EXPERIMENT_NAMES, run_experiment, run_experiments
from thetalab.graph import cycle_graph, graph_from_json, graph_to_json
from thetalab.ortho import basis_rep_from_clique_cover, rep_to_json, umbrella_rep
from thetalab.constructions import clique_union, clique_union_parts

SQRT5 = 2.23606797749979


def write_graph(path, g):
    path.write_text(json.dumps(graph_to_json(g)))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_furedi(tmp_path, capsys):
    out = tmp_path / "f.json"
    code, _, _ = run(capsys, ["construct", "furedi", "--q", "5", "--t", "2", "--out", str(out)])
    assert code == 0
    obj = json.loads(out.read_text())
    g = graph_from_json(obj)
    assert g.n == 12
    assert obj["provenance"]["family"] == "furedi"
    assert obj["provenance"]["loops_removed"]


def test_construct_rejects_bad_parameters(capsys):
    code, _, err = run(capsys, ["construct", "furedi", "--q", "5", "--t", "3"])
    assert code == 2
    assert "error" in err


def test_construct_cliques_parts(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, ["construct", "cliques", "--n", "10", "--t", "3", "--out", str(out)])
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["provenance"]["parts"] == [3, 3, 3, 1]
    assert graph_from_json(obj).edge_count() == 9


def test_construct_polarity_absolute_points(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run(capsys, ["construct", "polarity", "--q", "3", "--out", str(out)])
    assert code == 0
    obj = json.loads(out.read_text())
    assert graph_from_json(obj).n == 13
    assert len(obj["provenance"]["loops_removed"]) == 4


def test_theta_command_json(tmp_path, capsys):
    path = write_graph(tmp_path / "c5.json", cycle_graph(5))
    code, out, _ = run(capsys, ["theta", "--graph", path, "--json"])
    assert code == 0
    obj = json.loads(out)
    # reported floats are rounded to 9 significant digits, half an ulp here is 5e-9
    assert obj["lower"] - 1e-8 <= SQRT5 <= obj["upper"] + 1e-8
    assert obj["gap_reached"] is True
    x = np.array(obj["primal_x"])
    assert x.shape == (5, 5)
    assert abs(np.trace(x) - 1.0) <= 1e-6


def test_theta_command_gap_failure_exit(tmp_path, capsys):
    path = write_graph(tmp_path / "c5.json", cycle_graph(5))
    code, out, err = run(capsys, ["theta", "--graph", path, "--tol", "1e-8",
                                  "--iteration-cap", "3"])
    assert code == 1
    assert "warning" in err
    assert "lower:" in out  # partial bracket still reported


def test_theta_missing_file(capsys):
    code, _, err = run(capsys, ["theta", "--graph", "/nonexistent.json"])
    assert code == 2
    assert "error" in err


def test_spectrum_text(tmp_path, capsys):
    path = write_graph(tmp_path / "k3.json", clique_union(3, 3))
    code, out, _ = run(capsys, ["spectrum", "--graph", path])
    assert code == 0
    assert out.split("\n")[:3] == ["2", "-1", "-1"]


def test_check_free_exit_codes(tmp_path, capsys):
    path = write_graph(tmp_path / "c5.json", cycle_graph(5))
    code, out, _ = run(capsys, ["check", "free", "--pattern", "C4", "--graph", path])
    assert code == 0 and "free: true" in out
    code, out, _ = run(capsys, ["check", "free", "--pattern", "C5", "--graph", path])
    assert code == 1 and "free: false" in out
    code, _, err = run(capsys, ["check", "free", "--pattern", "X9", "--graph", path])
    assert code == 2 and "error" in err


def test_rep_validate_and_gram(tmp_path, capsys):
    path = tmp_path / "umb.json"
    path.write_text(json.dumps(rep_to_json(umbrella_rep(False))))
    code, out, _ = run(capsys, ["rep", "validate", "--file", str(path)])
    assert code == 0 and "valid: true" in out
    code, out, _ = run(capsys, ["rep", "gram", "--file", str(path), "--json"])
    assert code == 0
    m = np.array(json.loads(out)["gram"])
    assert m.shape == (5, 5)
    assert np.allclose(np.diag(m), 1.0, atol=1e-8)


def test_rep_certify_paths(tmp_path, capsys):
    g = clique_union(9, 3)
    rep = basis_rep_from_clique_cover(g, clique_union_parts(9, 3))
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep_to_json(rep)))
    code, out, _ = run(capsys, ["rep", "certify", "--file", str(path),
                                "--check", "schnirelmann"])
    assert code == 0 and "ok: true" in out
    code, out, _ = run(capsys, ["rep", "certify", "--file", str(path),
                                "--check", "msr-chain", "--t", "3", "--json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["ok"] is True and obj["trace_sq"] == 27.0
    code, _, err = run(capsys, ["rep", "certify", "--file", str(path),
                                "--check", "trace-power", "--t", "1"])
    assert code == 2 and "parity" in err


def test_verify_unknown_experiment(capsys):
    code, _, err = run(capsys, ["verify", "paper", "--experiment", "bogus"])
    assert code == 2
    assert "unknown experiment" in err


def test_verify_single_experiment_json(capsys):
    code, out, _ = run(capsys, ["verify", "paper", "--experiment", "theta-sandwich", "--json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["experiment"] == "theta-sandwich"
    assert obj["pass"] is True
    assert all(c["pass"] for c in obj["checks"])
    assert isinstance(obj["runtime_ms"], int)


def test_verify_output_deterministic(capsys):
    argv = ["verify", "paper", "--experiment", "polarity-c4", "--json"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    a, b = json.loads(out1), json.loads(out2)
    a.pop("runtime_ms"), b.pop("runtime_ms")
    assert code1 == code2 == 0
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_verify_multiple_and_parallel(capsys):
    argv = ["verify", "paper", "--experiment", "theta-sandwich",
            "--experiment", "polarity-c4", "--json"]
    code, out, _ = run(capsys, argv)
    assert code == 0
    objs = json.loads(out)
    # canonical order, regardless of the order flags were given in
    assert [o["experiment"] for o in objs] == ["polarity-c4", "theta-sandwich"]
    codep, outp, _ = run(capsys, argv + ["--parallel"])
    plain = [dict(o, runtime_ms=0) for o in objs]
    par = [dict(o, runtime_ms=0) for o in json.loads(outp)]
    assert codep == 0 and par == plain


def test_verify_known_failing_experiment_exits_one(capsys):
    code, out, _ = run(capsys, ["verify", "paper", "--experiment", "msr-cycle"])
    assert code == 1
    assert "28/78" in out
    assert "first miss n=5, t=3" in out


def test_experiment_reports_are_seed_deterministic():
    a = run_experiment("trace-power", seed=1)
    b = run_experiment("trace-power", seed=1)
    assert [c.to_json() for c in a.checks] == [c.to_json() for c in b.checks]
    assert a.passed and a.seed == 1


def test_run_experiments_rejects_unknown():
    from thetalab.errors import PreconditionViolated

    with pytest.raises(PreconditionViolated):
        run_experiments(["theta-sandwich", "nope"])


def test_experiment_name_listing_is_complete():
    assert set(EXPERIMENT_NAMES) == {
        "furedi-spectral", "polarity-c4", "theta-sandwich", "schnirelmann",
        "msr-cycle", "trace-power", "claim1-sandwich", "layer-coloring",
        "even-cycle-bound",
    }
