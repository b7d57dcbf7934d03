import json
import subprocess
import sys

import numpy as np
import pytest

from clatda.cli import float_list, int_list, main
from clatda.geometry import read_csv


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def cloud_csv(tmp_path):
    path = tmp_path / "x.csv"
    assert run("gen", "--kind", "sphere", "--dim", 2, "--count", 300, "--seed", 0, "--out", path) == 0
    return path


def test_list_parsing():
    assert int_list("0..3") == [0, 1, 2, 3]
    assert int_list("1000:5000:1000") == [1000, 2000, 3000, 4000, 5000]
    assert int_list("1,4..5") == [1, 4, 5]
    assert float_list("0.1,0.5") == [0.1, 0.5]


def test_pipeline(tmp_path, cloud_csv, capsys):
    y = tmp_path / "y.csv"
    assert run("reduce", "--in", cloud_csv, "--rate", 0.5, "--strategy", "center", "--out", y) == 0
    assert abs(read_csv(y).shape[0] - 150) <= 3
    out = tmp_path / "y.json"
    dump = tmp_path / "y.txt"
    assert run("pd", "--in", y, "--max-degree", 1, "--out", out, "--dump", dump) == 0
    data = json.loads(out.read_text())
    assert [b["degree"] for b in data] == [0, 1]
    assert sum(b["death"] == "inf" for b in data[0]["bars"]) == 1
    assert dump.read_text().splitlines()[0] == "0 0 0"
    capsys.readouterr()
    assert run("bottleneck", "--a", out, "--b", out, "--degree", 1) == 0
    assert capsys.readouterr().out == "0\n"


def test_reduce_by_delta(tmp_path, cloud_csv):
    y = tmp_path / "y.csv"
    assert run("reduce", "--in", cloud_csv, "--delta", 10, "--out", y, "--quiet") == 0
    assert y.read_text().startswith("# delta=10 strategy=center")


def test_exit_codes(tmp_path, cloud_csv, capsys):
    assert run("reduce", "--in", tmp_path / "missing.csv", "--delta", 1) == 1
    assert run("reduce", "--in", cloud_csv) == 1
    assert run("reduce", "--in", cloud_csv, "--delta", -1) == 1
    assert run("nonsense") == 1
    assert run("gen", "--kind", "sphere", "--dim", 1, "--count", 5) == 1
    assert run("pd", "--in", cloud_csv, "--budget", 1000) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    assert run("pd", "--in", bad) == 1
    assert "error:" in capsys.readouterr().err


def test_config_echo(cloud_csv, capsys):
    run("reduce", "--in", cloud_csv, "--delta", 5, "--out", "-")
    err = capsys.readouterr().err
    assert err.startswith("config: ")
    assert json.loads(err.splitlines()[0][len("config: "):])["delta"] == 5.0


def test_verify_and_bench(tmp_path):
    v = tmp_path / "v.csv"
    assert run("verify", "--dims", 2, "--counts", 20, "--rates", "0.3", "--seeds", "0..1", "--out", v) == 0
    assert len(v.read_text().splitlines()) == 1 + 2 * 3 * 2
    b = tmp_path / "b.csv"
    assert run("bench", "--counts", 30, "--rates", "0,0.5", "--repeats", 1, "--max-scale", "auto", "--out", b) == 0
    assert len(b.read_text().splitlines()) == 3


def _artifacts(tmp_path):
    cmd = [sys.executable, "-m", "clatda.cli"]
    steps = [
        ["gen", "--kind", "random", "--dim", "3", "--count", "80", "--seed", "9", "--out", "x.csv"],
        ["reduce", "--in", "x.csv", "--rate", "0.3", "--strategy", "centroid", "--out", "y.csv"],
        ["pd", "--in", "y.csv", "--out", "y.json"],
        ["verify", "--dims", "2", "--counts", "20", "--rates", "0.5", "--seeds", "0", "--out", "v.csv"],
    ]
    for step in steps:
        subprocess.run(cmd + step + ["--quiet"], cwd=tmp_path, check=True, capture_output=True)
    return {p: (tmp_path / p).read_bytes() for p in ["x.csv", "y.csv", "y.json", "v.csv"]}


def test_artifacts_are_byte_identical(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    assert _artifacts(tmp_path / "a") == _artifacts(tmp_path / "b")
