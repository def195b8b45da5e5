import json

import pytest

from primindex.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_index_power(capsys):
    code, out, _ = run_cli(capsys, ["index", "--word", "aaa", "--rank", "2"])
    assert code == 0
    assert "d_prim = 3" in out


def test_index_generator_all_ones(capsys):
    code, out, _ = run_cli(capsys, ["index", "--word", "a", "--rank", "2"])
    assert code == 0
    assert "d_prim = 1" in out and "d_simp = 1" in out


def test_index_json_schema(capsys):
    code, out, _ = run_cli(capsys, ["index", "--word", "abAB", "--rank", "2", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["manifest"]["schema_version"] == 1
    assert payload["manifest"]["command"] == "index"
    assert payload["result"]["d_prim"] >= payload["result"]["d_simp"]
    assert "witnesses" in payload["result"]


def test_index_invalid_word_exit_2(capsys):
    code, _, err = run_cli(capsys, ["index", "--word", "a!b", "--rank", "2"])
    assert code == 2
    assert "invalid input" in err


def test_index_trivial_word_exit_2(capsys):
    code, _, _ = run_cli(capsys, ["index", "--word", "aA", "--rank", "2"])
    assert code == 2


def test_index_resource_guard_exit_3(capsys):
    code, _, err = run_cli(
        capsys,
        ["index", "--word", "aabbaabb", "--rank", "2", "--max-partitions", "3"],
    )
    assert code == 3
    assert "resource guard" in err


def test_json_output_reproducible(capsys):
    _, out1, _ = run_cli(capsys, ["index", "--word", "abAB", "--rank", "2", "--json"])
    _, out2, _ = run_cli(capsys, ["index", "--word", "abAB", "--rank", "2", "--json"])
    assert out1 == out2


def test_covers_json_counts(capsys):
    code, out, _ = run_cli(capsys, ["covers", "--rank", "2", "--degree", "2", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["result"]) == 3


def test_covers_dot_export(tmp_path, capsys):
    outdir = tmp_path / "dots"
    code, _, err = run_cli(
        capsys,
        ["covers", "--rank", "2", "--degree", "1", "--dot", str(outdir)],
    )
    assert code == 0
    files = list(outdir.glob("*.dot"))
    assert len(files) == 1
    assert "digraph" in files[0].read_text()


def test_walk_deterministic(capsys):
    args = ["walk", "--rank", "2", "--n", "200", "--seed", "7"]
    _, out1, _ = run_cli(capsys, args)
    _, out2, _ = run_cli(capsys, args)
    assert out1 == out2
    assert len(out1.strip()) == 200


def test_walk_stats_json(capsys):
    code, out, _ = run_cli(
        capsys,
        ["walk", "--rank", "2", "--n", "500", "--seed", "3", "--stats", "--json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["stats"]["length"] == 500
    assert payload["manifest"]["seeds"] == [3]


def test_blocker_beta_rose(capsys):
    code, out, _ = run_cli(
        capsys, ["blocker", "--degree", "1", "--rank", "2", "--kind", "beta"]
    )
    assert code == 0
    assert "verified" in out


def test_blocker_verify_json(capsys):
    code, out, _ = run_cli(
        capsys,
        ["blocker", "--degree", "2", "--rank", "2", "--kind", "alpha",
         "--verify", "--json"],
    )
    assert code == 0
    payload = json.loads(out)
    for entry in payload["result"]:
        assert entry["verified"]
        assert all(entry["per_vertex_containment"])


def test_experiment_json(tmp_path, capsys):
    out_file = tmp_path / "exp.json"
    code, out, _ = run_cli(
        capsys,
        ["experiment", "--rank", "2", "--n", "6", "--trials", "20",
         "--dcap", "3", "--seed", "5", "--out", str(out_file)],
    )
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert sum(payload["result"]["distribution"].values()) == 20


def test_table_jobs_consistency(capsys):
    code1, out1, _ = run_cli(capsys, ["table", "--rank", "2", "--nmax", "3", "--json"])
    code2, out2, _ = run_cli(
        capsys, ["table", "--rank", "2", "--nmax", "3", "--jobs", "2", "--json"]
    )
    assert code1 == code2 == 0
    r1 = json.loads(out1)["result"]
    r2 = json.loads(out2)["result"]
    assert r1["rows"] == r2["rows"]


def test_minimize_trace_json(capsys):
    code, out, _ = run_cli(
        capsys, ["minimize", "--word", "abA", "--rank", "2", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["minimal"] == "b"
    assert payload["result"]["replay_matches"]
    assert payload["result"]["trace"][0]["kind"] == "second"


def test_witness_command(capsys):
    code, out, _ = run_cli(capsys, ["witness", "--degree", "1", "--rank", "2", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["audit"]["complete"]


def test_witness_resource_guard(capsys):
    code, _, err = run_cli(
        capsys, ["witness", "--degree", "2", "--rank", "2", "--max-covers", "1"]
    )
    assert code == 3


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
