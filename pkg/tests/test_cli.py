"""Command-line interface: outputs, exit codes, file handling."""

from __future__ import annotations

import json

import pytest

from bipmoore.cli import main
from bipmoore.graphs import format_adjacency, read_adjacency
from bipmoore.circulant import build_phi_spec, parse_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "7", "3")
    assert code == 0
    assert "86" in out
    code, out, _ = run(capsys, "bound", "11", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mooreBound"] == 222
    assert payload["schemaVersion"] == 1


def test_bound_with_order(capsys):
    code, out, _ = run(capsys, "bound", "7", "3", "--order", "80", "--json")
    assert code == 0
    assert json.loads(out)["defect"] == 6


def test_bound_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bound", "1", "3"])
    assert exc.value.code == 2


def test_build_and_check_round_trip(tmp_path, capsys):
    out_file = tmp_path / "phi11_4.adj"
    code, out, _ = run(capsys, "build", "--spec", "phi 11: 4", "--out", str(out_file))
    assert code == 0
    assert "22 vertices" in out
    g = read_adjacency(out_file)
    assert g == build_phi_spec(parse_spec("phi 11: 4"))
    code, out, _ = run(
        capsys, "check", "--in", str(out_file),
        "--expect-diameter", "3", "--expect-defect", "4", "--expect-degree", "4",
    )
    assert code == 0


def test_check_spec_json(capsys):
    code, out, _ = run(capsys, "check", "--spec", "phi 11: 4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["diameter"] == 3
    assert payload["girth"] == 4
    assert payload["defect"] == 4


def test_check_expectation_failure(capsys):
    code, _, err = run(capsys, "check", "--spec", "phi 12: 4", "--expect-diameter", "3")
    assert code == 1
    assert "FAILED" in err


def test_check_disconnected_reports_infinite(tmp_path, capsys):
    path = tmp_path / "two_squares.adj"
    path.write_bytes(b"4 4\nx0: 0 1\nx1: 0 1\nx2: 2 3\nx3: 2 3\n")
    code, out, _ = run(capsys, "check", "--in", str(path), "--json")
    assert code == 0
    assert json.loads(out)["diameter"] == "infinite"


def test_check_edge_list_input(tmp_path, capsys):
    path = tmp_path / "edges.txt"
    path.write_text("# demo\n0 0\n0 1\n1 0\n1 1\n")
    code, out, _ = run(capsys, "check", "--in", str(path), "--json")
    assert code == 0
    assert json.loads(out)["order"] == 4


def test_check_headerless_edge_list(tmp_path, capsys):
    path = tmp_path / "edges.txt"
    path.write_text("0 0\n0 1\n1 0\n1 1\n")
    code, out, _ = run(capsys, "check", "--in", str(path), "--json")
    assert code == 0
    assert json.loads(out)["order"] == 4


def test_check_unparseable_file(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("zzz\n")
    code, _, err = run(capsys, "check", "--in", str(path))
    assert code == 2
    assert "adjacency" in err and "edge list" in err


def test_search_text_and_expectations(capsys):
    code, out, _ = run(capsys, "search", "--d", "7", "--m", "41", "--expect-none")
    assert code == 0
    assert "0 solutions, exhausted" in out
    code, _, err = run(capsys, "search", "--d", "7", "--m", "41", "--expect-some")
    assert code == 1
    code, _, _ = run(capsys, "search", "--d", "4", "--m", "11", "--expect-some")
    assert code == 0


def test_search_json_deterministic_across_workers(capsys):
    outputs = []
    for workers in ("1", "2"):
        code, out, _ = run(
            capsys, "search", "--d", "6", "--m", "25", "--json", "--workers", workers
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_search_budget_exit(capsys):
    code, _, _ = run(capsys, "search", "--d", "7", "--m", "41", "--budget", "10")
    assert code == 3


def test_search_prefix(capsys):
    code, out, _ = run(
        capsys, "search", "--d", "11", "--m", "95",
        "--prefix", "4,7,16,27,38,52,62,81", "--json",
    )
    assert code == 0
    assert json.loads(out)["solutions"] == ["phi 95: 4,7,16,27,38,52,62,81"]


def test_max_m(capsys):
    code, out, _ = run(capsys, "max-m", "--d", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["bestM"] == 11
    assert payload["witnesses"] == ["phi 11: 4"]


def test_analyze(tmp_path, capsys):
    path = tmp_path / "phi11_4.adj"
    code, _, _ = run(capsys, "build", "--spec", "phi 11: 4", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "analyze", "--in", str(path), "--d", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["gamma1"][0]["recognized"] is True
    assert payload["gamma1"][0]["phiM"] == 11
    names = {e["name"]: e["status"] for e in payload["observations"]}
    assert names["gamma1_shift_invariance"] == "pass"


def test_analyze_failure_exit(tmp_path, capsys):
    # two theta blocks with an illegal cross edge at the defect-4 order
    edges = [(b, m) for b in (0, 1) for m in (0, 1, 2)]
    edges += [(b, m) for b in (2, 3) for m in (3, 4, 5)]
    edges.append((0, 3))
    from bipmoore.graphs import BipartiteGraph, write_adjacency

    g = BipartiteGraph.from_edges(11, 11, edges)
    path = tmp_path / "bad.adj"
    write_adjacency(g, path)
    code, out, _ = run(capsys, "analyze", "--in", str(path), "--d", "4")
    assert code == 1
    assert "no_edge_gamma2_gamma2" in out


def test_iso_command(tmp_path, capsys):
    a = tmp_path / "a.adj"
    b = tmp_path / "b.adj"
    run(capsys, "build", "--spec", "phi 11: 4", "--out", str(a))
    run(capsys, "build", "--spec", "phi 11: 7", "--out", str(b))
    code, out, _ = run(capsys, "iso", "--a", str(a), "--b", str(b))
    assert code == 0
    assert "isomorphic" in out
    code, _, _ = run(capsys, "iso", "--a", str(a), "--b", str(b), "--expect-non-isomorphic")
    assert code == 1
    code, out, _ = run(capsys, "iso", "--a", str(a), "--b", str(b), "--json")
    payload = json.loads(out)
    assert payload["isomorphic"] is True
    assert len(payload["mapping"]) == 22


def test_iso_over_cap_is_budget_exit(tmp_path, capsys):
    lines = ["260 260"] + [f"x{i}:" for i in range(260)]
    path = tmp_path / "big.adj"
    path.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "iso", "--a", str(path), "--b", str(path))
    assert code == 3
    assert "budget" in err


def test_audit_command(capsys):
    code, out, _ = run(capsys, "audit", "--d", "7")
    assert code == 0
    assert "nonexistence-confirmed" in out
    assert "86" in out and "82" in out and "80" in out
    code, out, _ = run(capsys, "audit", "--d", "7", "--json")
    assert json.loads(out)["verdict"] == "nonexistence-confirmed"
    code, _, _ = run(capsys, "audit", "--d", "7", "--uncapped-contraction")
    assert code == 1
    code, _, _ = run(capsys, "audit", "--d", "6")
    assert code == 1


def test_verify_known_reports_isomorphism_truth(capsys):
    """Per-graph checks hold; the published non-isomorphism claim does not,
    so the command exits nonzero naming the failing pairs."""
    code, out, err = run(capsys, "verify-known")
    assert code == 1
    for name in ("order", "regularity", "diameter", "defect", "girth"):
        assert f"{name} ok" in out
    assert out.count("non-isomorphism FAILED") == 3
    assert "graphs are isomorphic" in err


def test_verify_known_export(tmp_path, capsys):
    code, out, _ = run(capsys, "verify-known", "--export", "--out-dir", str(tmp_path))
    assert code == 1  # the isomorphism finding does not block the export
    files = sorted(tmp_path.glob("*.adj"))
    assert len(files) == 3
    g = read_adjacency(files[0])
    assert g.order == 190
    assert format_adjacency(g).encode() == files[0].read_bytes()


def test_tampered_fixture_fails_diameter(capsys):
    # offset 4 -> 5 in the first tuple breaks coverage, hence the diameter
    code, _, err = run(
        capsys, "check", "--spec", "phi 95: 5,7,16,27,38,52,62,81",
        "--expect-diameter", "3",
    )
    assert code == 1
    assert "diameter" in err


def test_workers_env_default(monkeypatch, capsys):
    monkeypatch.setenv("BIPMOORE_WORKERS", "2")
    code, out, _ = run(capsys, "search", "--d", "4", "--m", "11", "--json")
    assert code == 0
    assert json.loads(out)["solutions"] == ["phi 11: 4"]


def test_bad_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "build", "--spec", "phi 4: 2")
    assert code == 2
    assert "error" in err
