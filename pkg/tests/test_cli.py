import json

import pytest

from kfe.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_star(capsys):
    code, out, _ = run_cli(capsys, "--gen", "star:5", "--mode", "count")
    assert code == 0
    assert out.strip() == "17"


def test_count_complete(capsys):
    code, out, _ = run_cli(capsys, "--gen", "complete:6", "--mode", "count")
    assert code == 0
    assert out.strip() == "7"


def test_count_reference_engine(capsys):
    code, out, _ = run_cli(capsys, "--gen", "path:4", "--mode", "count", "--engine", "reference")
    assert code == 0
    assert out.strip() == "8"


def test_verify_path(capsys):
    code, _, err = run_cli(capsys, "--gen", "path:3", "--mode", "verify")
    assert code == 0
    assert "agree" in err


def test_stream_text(capsys):
    code, out, _ = run_cli(capsys, "--gen", "path:3", "--mode", "stream")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "S"
    assert len(lines) == 5
    assert all(line.startswith("d ") for line in lines[1:])


def test_stream_limit_prefix(capsys):
    code, full, _ = run_cli(capsys, "--gen", "gnp:9:0.3", "--mode", "stream", "--seed", "5")
    code2, part, _ = run_cli(capsys, "--gen", "gnp:9:0.3", "--mode", "stream", "--seed", "5", "--limit", "4")
    assert code == code2 == 0
    assert part.splitlines() == full.splitlines()[:4]


def test_stream_materialize(capsys):
    code, out, _ = run_cli(capsys, "--gen", "complete:3", "--mode", "stream", "--materialize")
    assert code == 0
    assert out.splitlines() == ["", "0", "1", "2"]


def test_stream_binary_to_file(tmp_path, capsys):
    target = tmp_path / "diffs.bin"
    code, _, _ = run_cli(capsys, "--gen", "path:3", "--mode", "stream", "--binary", "--out", str(target))
    assert code == 0
    from kfe import CollectSink, encode_diff_binary, enumerate_linear_space, generate

    sink = CollectSink()
    enumerate_linear_space(generate("path", n=3), sink)
    assert target.read_bytes() == encode_diff_binary(sink.diffs)


def test_stats_json(capsys):
    code, out, _ = run_cli(capsys, "--gen", "path:10", "--mode", "stats")
    assert code == 0
    rep = json.loads(out)
    assert rep["solutions"] == 144
    assert rep["q"] == 3
    assert rep["po_fail"] == 0


def test_bench_csv(capsys):
    code, out, _ = run_cli(capsys, "--mode", "bench", "--families", "star,path", "--sizes", "6,8", "--seed", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,m,M,ops,ops_per_solution,peak_space,omega,q"
    assert len(lines) == 5
    star6 = lines[1].split(",")
    assert star6[0] == "star" and star6[1] == "6" and star6[3] == "33"


def test_bench_json(capsys):
    code, out, _ = run_cli(capsys, "--mode", "bench", "--families", "complete", "--sizes", "5", "--json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["M"] == 6 and rows[0]["q"] == 6


def test_bench_empty_families(capsys):
    # an empty family list is a legal request for an empty table
    code, out, _ = run_cli(capsys, "--mode", "bench", "--families", "", "--sizes", "5")
    assert code == 0
    assert out.splitlines() == ["family,n,m,M,ops,ops_per_solution,peak_space,omega,q"]


def test_bench_no_families_flag(capsys):
    code, out, _ = run_cli(capsys, "--mode", "bench")
    assert code == 0
    assert out.splitlines() == ["family,n,m,M,ops,ops_per_solution,peak_space,omega,q"]


def test_input_file_edgelist(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("0 1\n1 2\n")
    code, out, _ = run_cli(capsys, "--input", str(f), "--mode", "count")
    assert code == 0 and out.strip() == "5"


def test_input_file_dimacs(tmp_path, capsys):
    f = tmp_path / "g.col"
    f.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
    code, out, _ = run_cli(capsys, "--input", str(f), "--format", "dimacs", "--mode", "count")
    assert code == 0 and out.strip() == "5"


def test_parse_error_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0 zero\n")
    code, _, err = run_cli(capsys, "--input", str(f), "--mode", "count")
    assert code == 2
    assert "line 1" in err


def test_missing_source_exit_2(capsys):
    code, _, err = run_cli(capsys, "--mode", "count")
    assert code == 2


def test_bad_gen_spec_exit_2(capsys):
    code, _, err = run_cli(capsys, "--gen", "star", "--mode", "count")
    assert code == 2


def test_deterministic_output(capsys):
    a = run_cli(capsys, "--gen", "bipartite:6:6:0.4", "--mode", "stream", "--seed", "9")
    b = run_cli(capsys, "--gen", "bipartite:6:6:0.4", "--mode", "stream", "--seed", "9")
    assert a == b
