import csv
import subprocess
import sys

import pytest

from holz.cli import main


@pytest.fixture
def sample(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_bytes(b"abracadabra abracadabra\x00 zero byte " * 40)
    return p


def test_compress_decompress(tmp_path, sample, capsys):
    assert main(["compress", str(sample)]) == 0
    err = capsys.readouterr().err
    assert "z=" in err and "ratio=" in err
    packed = tmp_path / "sample.txt.holz"
    out = tmp_path / "restored.txt"
    assert main(["decompress", str(packed), "-o", str(out)]) == 0
    assert out.read_bytes() == sample.read_bytes()


@pytest.mark.parametrize("method", ["lz-nsvpsv", "lz-rightmost", "lz-opt", "holz", "holz-opt"])
def test_every_method_with_escape(tmp_path, sample, method):
    packed = tmp_path / "x.holz"
    assert main(["compress", str(sample), "-o", str(packed), "--method", method,
                 "--code", "gamma", "--escape-zero"]) == 0
    out = tmp_path / "x"
    assert main(["decompress", str(packed)]) == 0
    assert out.read_bytes() == sample.read_bytes()


def test_unsupported_format(tmp_path, capsys):
    bogus = tmp_path / "bogus.holz"
    bogus.write_bytes(b"PK\x03\x04 not ours")
    target = tmp_path / "bogus"
    assert main(["decompress", str(bogus)]) == 1
    assert "unsupported format" in capsys.readouterr().err
    assert not target.exists()


def test_corrupt_payload_leaves_no_output(tmp_path, sample, capsys):
    packed = tmp_path / "s.holz"
    main(["compress", str(sample), "-o", str(packed)])
    packed.write_bytes(packed.read_bytes()[:-3])
    out = tmp_path / "s.out"
    assert main(["decompress", str(packed), "-o", str(out)]) == 1
    assert "corrupt" in capsys.readouterr().err
    assert not out.exists()
    assert list(tmp_path.glob(".s.out.*")) == []


def test_missing_input(tmp_path, capsys):
    assert main(["compress", str(tmp_path / "nope")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compress"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compress", "f", "--method", "lz78"])
    assert exc.value.code == 2
    assert main(["stats", "f", "--max-k", "-1"]) == 2


def test_stats_directory(tmp_path, capsys):
    (tmp_path / "a.txt").write_bytes(b"abbabb")
    (tmp_path / "b.txt").write_bytes(b"aaaa")
    assert main(["stats", str(tmp_path), "--max-k", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "name,n,sigma,z,r,H0,H1"
    assert lines[1].startswith("a.txt,6,2,4,")
    assert lines[2].startswith("b.txt,4,1,1,2,0.00")


def test_bench_csv(tmp_path, sample):
    out = tmp_path / "bench.csv"
    assert main(["bench", str(sample), "-o", str(out), "--methods", "lz-rightmost,holz",
                 "--prefix-bytes", "500"]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4
    assert list(rows[0]) == ["dataset", "method", "code", "input_bytes", "output_bytes", "ratio",
                             "offset_bits", "length_bits", "wall_time_s"]
    assert {r["input_bytes"] for r in rows} == {"500"}


def test_bench_jobs(tmp_path):
    for name in ("p.txt", "q.txt"):
        (tmp_path / name).write_bytes(name.encode() * 50)
    out = tmp_path / "b.csv"
    data = tmp_path / "data"
    data.mkdir()
    for f in tmp_path.glob("*.txt"):
        f.rename(data / f.name)
    assert main(["bench", str(data), "-o", str(out), "--methods", "holz", "--codes", "delta",
                 "--jobs", "2"]) == 0
    assert [r["dataset"] for r in csv.DictReader(out.open())] == ["p.txt", "q.txt"]


def test_console_entry_point(sample):
    proc = subprocess.run([sys.executable, "-m", "holz.cli", "stats", str(sample), "--max-k", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("name,n,sigma,z,r,H0")
