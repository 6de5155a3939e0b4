import json

import pytest

from broadcastnet.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_command(capsys):
    code, out, _ = run_cli(capsys, "params", "--t", "14", "--k", "3", "--n", "16385")
    assert code == 0
    obj = json.loads(out)
    assert (obj["d"], obj["x"], obj["y"], obj["p"]) == (12287, 2, 4095, 1)


def test_params_domain_error_exit_1(capsys):
    code, out, err = run_cli(capsys, "params", "--t", "7", "--k", "4", "--n", "192")
    assert code == 1
    assert "error" in err
    assert out == ""


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table1", "--t-min", "7"])  # missing --t-max
    assert exc.value.code == 2


def test_table1_row(capsys):
    code, out, _ = run_cli(capsys, "table1", "--t-min", "7", "--t-max", "7")
    assert code == 0
    assert out.splitlines() == ["t,k,n,ours,hl", "7,2,192,551,557"]


def test_table2_facsimile(capsys):
    code, out, _ = run_cli(capsys, "table2", "--t", "14", "--paper-facsimile")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,k=2,k=3,k=4,k=5,k=6,hln,hl"
    assert lines[1] == "16385,49109,49044,48909,48628,48043,115871,"
    assert lines[-1] == "32255,,,,,224963,227942,225586"


def test_bounds_command(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--n", "192")
    assert code == 0
    obj = json.loads(out)
    assert obj["bounds"]["construction"]["value"] == 551
    assert obj["best"] == "construction"


def test_construct_writes_file_and_accounting(tmp_path, capsys):
    out_file = tmp_path / "g.json"
    code, out, _ = run_cli(capsys, "construct", "--t", "7", "--k", "2",
                           "--out", str(out_file), "--format", "json")
    assert code == 0
    acc = json.loads(out)
    assert acc["total_edges"]["measured"] == 551
    data = json.loads(out_file.read_text())
    assert data["n"] == 192 and len(data["edges"]) == 551


def test_construct_defaults_to_full_size(tmp_path, capsys):
    out_file = tmp_path / "g.dot"
    code, out, _ = run_cli(capsys, "construct", "--t", "7", "--k", "2",
                           "--out", str(out_file), "--format", "dot")
    assert code == 0
    assert out_file.read_text().startswith("graph ")


def test_certify_pass_exit_0(capsys):
    code, out, _ = run_cli(capsys, "certify", "--t", "7", "--k", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["pass"] is True and obj["max_round"] == 8


def test_certify_single_originator(capsys):
    code, out, _ = run_cli(capsys, "certify", "--t", "7", "--k", "2",
                           "--n", "191", "--originator", "0")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["per_originator"]) == 1


def test_certify_deterministic_across_jobs(capsys):
    _, out1, _ = run_cli(capsys, "certify", "--t", "7", "--k", "2", "--jobs", "1")
    _, out2, _ = run_cli(capsys, "certify", "--t", "7", "--k", "2", "--jobs", "2")
    assert out1 == out2


def test_exact_on_exported_graph(tmp_path, capsys):
    import broadcastnet as bn
    q = bn.build_hypercube(3)
    path = tmp_path / "q3.json"
    path.write_text(q.to_graph().to_json())
    code, out, _ = run_cli(capsys, "exact", "--graph", str(path), "--originator", "0")
    assert code == 0
    assert out.strip() == "3"


def test_export_round_trip(tmp_path, capsys):
    import broadcastnet as bn
    q = bn.build_hypercube(2)
    path = tmp_path / "q2.json"
    path.write_text(q.to_graph().to_json())
    code, out, _ = run_cli(capsys, "export", "--graph", str(path),
                           "--format", "edgelist")
    assert code == 0
    assert out.splitlines() == ["0 1", "0 2", "1 3", "2 3"]


def test_schedule_command(capsys):
    code, out, _ = run_cli(capsys, "schedule", "--t", "7", "--k", "2",
                           "--originator", "5")
    assert code == 0
    obj = json.loads(out)
    assert obj["completes_at"] <= 8


def test_byte_identical_reruns(capsys, tmp_path):
    args = ("construct", "--t", "7", "--k", "3", "--n", "191",
            "--out", str(tmp_path / "a"), "--format", "edgelist")
    _, out1, _ = run_cli(capsys, *args)
    data1 = (tmp_path / "a").read_bytes()
    args = ("construct", "--t", "7", "--k", "3", "--n", "191",
            "--out", str(tmp_path / "b"), "--format", "edgelist")
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    assert data1 == (tmp_path / "b").read_bytes()
