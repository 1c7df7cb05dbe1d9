import io
import json
import subprocess
import sys

import pytest

from sparsehyper.cli import run
from sparsehyper.hypergraph import build, fano, parse, read, write
from sparsehyper.freeness import FreenessConstraint, find_violation


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "fano.hg"
    write(fano(), path)
    return str(path)


def test_check_free(fano_file):
    assert call("check", "--input", fano_file, "--v", "5", "--e", "3") == (0, "free\n")


def test_check_violation(fano_file):
    code, out = call("check", "--input", fano_file, "--v", "7", "--e", "3", "--quiet")
    assert code == 1 and out.startswith("violation\n")


def test_check_json(fano_file):
    code, out = call("check", "--input", fano_file, "--v", "6", "--e", "3", "--format", "json-lines")
    rec = json.loads(out.splitlines()[0])
    assert code == 1 and rec["status"] == "violation" and len(rec["edge_ids"]) == 3


def test_check_budget(tmp_path):
    path = tmp_path / "k9.hg"
    from sparsehyper.hypergraph import complete

    write(complete(9, 3), path)
    code, out = call("check", "--input", str(path), "--v", "4", "--e", "5", "--budget", "30")
    assert code == 2 and out.startswith("budget-exhausted")


def test_solve():
    assert call("solve", "--n", "4", "--r", "3", "--v", "5", "--e", "3") == (0, "optimum 2\nstatus proven-optimal\n")


def test_solve_csv_and_witness(tmp_path):
    w = tmp_path / "w.hg"
    code, out = call("solve", "--n", "7", "--r", "3", "--v", "5", "--e", "3", "--format", "csv", "--output", str(w))
    assert code == 0
    assert out.splitlines() == ["n,r,v,e,optimum,nodes,status", out.splitlines()[1]]
    assert out.splitlines()[1].startswith("7,3,5,3,7,")
    H = read(w)
    assert len(H) == 7 and find_violation(H, FreenessConstraint(5, 3)).free


def test_solve_budget():
    code, out = call("solve", "--n", "9", "--r", "3", "--v", "6", "--e", "3", "--budget", "10")
    assert code == 2 and "budget-exhausted" in out


def test_limits():
    code, out = call("limits", "--r", "3", "--k", "2", "--e", "4")
    assert code == 0 and out == "3 2 4 7/36 [e4-formula-gives-1/6]\n"
    code, out = call("limits", "--what", "constants", "--r", "3")
    assert "alpha=1/5" in out and "delta=1/11" in out and "b=1/7" in out
    code, out = call("limits", "--what", "bounds", "--n", "100", "--r", "3", "--v", "5", "--e", "3")
    assert "lower_exponent=2" in out


def test_limits_table_csv():
    code, out = call("limits", "--r", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "r,k,e,value,float,source,flags"


def test_chain():
    code, out = call("chain", "--n", "6", "--r", "3", "--e", "3")
    assert code == 0
    assert out == "f 4 proven-optimal\nf^(2) 0 proven-optimal\nmonotone true\ncase1 true\n"


def test_construct_round_trip(tmp_path):
    path = tmp_path / "p.hg"
    code, out = call("construct", "--n", "20", "--r", "3", "--e", "4", "--seed", "3", "--maximal", "--output", str(path))
    assert code == 0 and "maximal true" in out
    H = read(path)
    assert parse(path.read_text()) == H
    for v, e in [(4, 2), (5, 3), (6, 4)]:
        assert find_violation(H, FreenessConstraint(v, e)).free


def test_peel(tmp_path):
    src = tmp_path / "h.hg"
    write(build(6, 3, [(0, 1, 2), (0, 1, 3), (3, 4, 5)]), src)
    dst = tmp_path / "g.hg"
    code, out = call("peel", "--input", str(src), "--k", "2", "--e", "2", "--format", "csv", "--output", str(dst))
    assert code == 0
    # vertex 2 has degree 1; then vertex 0 drops to 1; 345 is alone throughout
    assert out.splitlines() == ["edge,subset,codegree", "0 1 2,2,1", "0 1 3,0,1", "3 4 5,3,1"]
    assert len(read(dst)) == 0


def test_extract(tmp_path):
    src = tmp_path / "h.hg"
    write(build(8, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 5, 6), (2, 5, 6)]), src)
    code, out = call("extract", "--input", str(src), "--t", "4", "--e", "5", "--format", "csv", "--quiet")
    assert code == 0
    assert out.splitlines() == ["j,e_j,v_j,density", "0,5,8,0.078125", "1,0,4,0.0"]


def test_config_file(tmp_path, fano_file):
    conf = tmp_path / "run.conf"
    conf.write_text(f"# sweep\ninput = {fano_file}\nv = 7\ne = 3\nquiet = true\n")
    assert call("check", "--config", str(conf))[0] == 1
    # flags win over the file
    assert call("check", "--config", str(conf), "--v", "5") == (0, "free\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["solve", "--n", "4"],
        ["solve", "--n", "x", "--r", "3"],
        ["check", "--input", "/nonexistent/file", "--v", "5", "--e", "3"],
        ["limits", "--r", "3", "--k", "3", "--e", "3"],
        ["solve", "--n", "4", "--r", "3", "--v", "5", "--e", "3", "--budget", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out = call(*argv)
    assert code == 64 and out == ""
    assert capsys.readouterr().err


def test_bad_config_key(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    assert call("solve", "--config", str(conf))[0] == 64


def test_parse_error_is_usage(tmp_path):
    path = tmp_path / "bad.hg"
    path.write_text("4 3 2\n0 1 2\n")
    assert call("check", "--input", str(path), "--v", "5", "--e", "3")[0] == 64


def test_deterministic_output():
    argv = ["construct", "--n", "25", "--r", "3", "--e", "4", "--seed", "9", "--format", "json-lines"]
    assert call(*argv) == call(*argv)
    assert call(*argv, "--threads", "4", "--quiet")[1] == call(*argv)[1]


def test_console_entry_point(fano_file):
    proc = subprocess.run(
        [sys.executable, "-m", "sparsehyper", "check", "--input", fano_file, "--v", "5", "--e", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "free\n"
    assert "search nodes" in proc.stderr
