import subprocess
import sys

import pytest

from socialcentrality.cli import main


@pytest.fixture
def net(tmp_path):
    p = tmp_path / "net.tsv"
    p.write_text(
        "# toy\n"
        + "".join(f"{a}\t{b}\t{w}\n" for a, b, w in [
            ("u", "a", 1), ("u", "b", 1), ("u", "c", 1), ("a", "b", 2), ("a", "c", 1),
            ("b", "c", 1), ("u", "p", 3), ("p", "q", 1), ("q", "r", 0.5), ("r", "p", 1),
        ])
    )
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ingest(net, tmp_path, capsys):
    out = tmp_path / "clean.tsv"
    assert run(["ingest", net, "--out", out], capsys)[0] == 0
    assert out.read_text().splitlines()[0] == "u\ta\t1.0"


def test_ingest_coauthor(tmp_path, capsys):
    src = tmp_path / "papers.txt"
    src.write_text("p1 x\np1 y\np1 z\np2 x\np2 y\n")
    code, out, _ = run(["ingest", src, "--mode", "coauthor"], capsys)
    assert code == 0
    assert out.splitlines() == ["x\ty\t1.5", "x\tz\t0.5", "y\tz\t0.5"]


def test_truss(net, tmp_path, capsys):
    nodes = tmp_path / "nodes.tsv"
    code, out, _ = run(["truss", net, "--nodes", nodes], capsys)
    assert code == 0
    assert out == ""  # only --nodes requested
    tau = dict(line.split("\t") for line in nodes.read_text().splitlines())
    assert tau == {"u": "4", "a": "4", "b": "4", "c": "4", "p": "3", "q": "3", "r": "3"}
    code, out, _ = run(["truss", net, "--backend", "python"], capsys)
    assert "u\tp\t2" in out.splitlines()


def test_centrality_sc(net, capsys):
    code, out, _ = run(["centrality", net, "--measure", "sc"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "label,omega,beta,gamma,psi"
    assert len(lines) == 8


def test_centrality_all_measures(net, tmp_path, capsys):
    comm = tmp_path / "comm.csv"
    comm.write_text("label,community\n" + "".join(f"{x},{0 if x in 'uabc' else 1}\n" for x in "uabcpqr"))
    argv = ["centrality", net, "--out-dir", tmp_path / "scores", "--communities", comm]
    for m in ("sc", "sc-com", "dc", "ec", "bc", "cc", "lc", "nc"):
        argv += ["--measure", m]
    assert run(argv, capsys)[0] == 0
    for m in ("dc", "ec", "bc", "cc", "lc", "nc"):
        lines = (tmp_path / "scores" / f"{m}.csv").read_text().splitlines()
        assert lines[0] == f"label,{m}"
        assert len(lines) == 8


def test_rank_and_eval(net, tmp_path, capsys):
    d = tmp_path / "s"
    run(["centrality", net, "--measure", "sc", "--measure", "nc", "--out-dir", d], capsys)
    code, out, _ = run(["rank", d / "sc.csv", d / "nc.csv"], capsys)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["label", "sc", "nc"]
    assert rows[1][1] == "1"
    gt = tmp_path / "gt.csv"
    gt.write_text("label,value\nu,10\na,5\nb,6\nc,1\np,4\nq,2\nr,3\nnobody,99\n")
    code, out, _ = run(["eval", d / "sc.csv", d / "nc.csv", "--gt", gt, "--k", 3, "--k", 5], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "measure,k,rmse,jaccard,precision,recall,spearman"
    assert len(lines) == 5
    assert all(len(line.split(",")) == 7 for line in lines)
    assert lines[1].startswith("sc,3,")


def test_rank_name_count_mismatch(net, tmp_path, capsys):
    run(["centrality", net, "--measure", "dc", "--out", tmp_path / "dc.csv"], capsys)
    with pytest.raises(SystemExit) as info:
        main(["rank", str(tmp_path / "dc.csv"), "--name", "a", "--name", "b"])
    assert info.value.code == 2


def test_generate(tmp_path, capsys):
    out = tmp_path / "ws.tsv"
    code, _, _ = run(["generate", "--model", "ws", "--n", 50, "--seed", 42, "--out", out], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# model=ws n=50 ")
    assert "seed=42" in lines[0] and "rng=PCG64" in lines[0]
    assert sum(1 for line in lines if not line.startswith("#")) == 200


def test_bench(capsys):
    code, out, _ = run(["bench", "--model", "er", "--n", 2000, "--backend", "python"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# backend=python n=2000 m=4000 ")
    assert [line.split("\t")[0] for line in lines[1:]] == ["generate", "support", "peel", "score", "total", "peak_rss_mb"]


@pytest.mark.parametrize(
    "argv",
    [
        ["centrality", "NET", "--measure", "pagerank"],
        ["centrality", "NET", "--measure", "sc-com"],
        ["centrality", "NET", "--measure", "sc", "--measure", "dc"],
        ["generate", "--model", "ws"],
        ["bench"],
        ["truss", "NET", "--threads", "0"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, net, capsys):
    argv = [str(net) if a == "NET" else a for a in argv]
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_file_errors_exit_1(tmp_path, capsys):
    code, _, err = run(["truss", tmp_path / "missing.tsv"], capsys)
    assert code == 1 and "error" in err
    bad = tmp_path / "bad.tsv"
    bad.write_text("a b 1\na b -2\n")
    code, _, err = run(["ingest", bad], capsys)
    assert code == 1 and "line 2" in err
    code, _, err = run(["generate", "--model", "er", "--n", 4, "--m", 7], capsys)
    assert code == 1


def test_reruns_byte_identical(net, tmp_path, capsys):
    for k in (1, 2):
        run(["centrality", net, "--measure", "sc", "--measure", "bc", "--out-dir", tmp_path / f"r{k}"], capsys)
        run(["generate", "--model", "ff", "--n", 300, "--seed", 5, "--out", tmp_path / f"ff{k}.tsv"], capsys)
    for name in ("sc.csv", "bc.csv"):
        assert (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()
    assert (tmp_path / "ff1.tsv").read_bytes() == (tmp_path / "ff2.tsv").read_bytes()


def test_threads_identical(tmp_path, capsys):
    g = tmp_path / "er.tsv"
    run(["generate", "--model", "er", "--n", 300, "--seed", 1, "--out", g], capsys)
    for t in (1, 4):
        argv = ["centrality", g, "--threads", t, "--out-dir", tmp_path / f"t{t}"]
        for m in ("sc", "bc", "cc"):
            argv += ["--measure", m]
        run(argv, capsys)
    for name in ("sc.csv", "bc.csv", "cc.csv"):
        assert (tmp_path / "t1" / name).read_bytes() == (tmp_path / "t4" / name).read_bytes()


def test_module_entry_point_help():
    res = subprocess.run(
        [sys.executable, "-m", "socialcentrality.cli", "centrality", "--help"], capture_output=True, text=True
    )
    assert res.returncode == 0
    for flag in ("--measure", "--potentials", "--communities", "--conv", "--threads", "--seed", "--backend"):
        assert flag in res.stdout
