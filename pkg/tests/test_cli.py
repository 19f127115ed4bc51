import subprocess
import sys

import pytest

from localhom.cli import main, parse
from localhom.diagrams import PersistenceDiagram, read_diagram
from localhom.geometry import read_points


def meta(path):
    return dict(line.split("=", 1) for line in path.read_text().splitlines())


@pytest.fixture
def cross(tmp_path):
    path = tmp_path / "cross.pts"
    assert main(["gen", "--kind", "cross2d", "--eps", "0.02", "--out", str(path)]) == 0
    return path


def test_gen_writes_net(cross):
    cloud = read_points(cross)
    assert len(cloud) == 101 and cloud.dim == 2


def test_gen_stdout(capsys):
    assert main(["gen", "--kind", "segment", "--density", "0.25"]) == 0
    rows = [line.split() for line in capsys.readouterr().out.splitlines()]
    assert [float(r[0]) for r in rows] == [0, 0.25, 0.5, 0.75, 1.0]


def test_rips_diagram(tmp_path):
    pts = tmp_path / "sq.pts"
    pts.write_text("0 0\n1 0\n1 1\n0 1\n")
    out = tmp_path / "sq.dgm"
    assert main(["rips", "--in", str(pts), "--max-scale", "2", "--max-dim", "1", "--out", str(out)]) == 0
    d = read_diagram(out)
    assert d.in_dim(0).tolist() == [[0, 1], [0, 1], [0, 1], [0, float("inf")]]
    assert d.in_dim(1)[0].tolist() == pytest.approx([1, 2 ** 0.5])
    assert len(d.in_dim(1)) == 1


def test_local_alpha_sidecar(cross, tmp_path):
    out = tmp_path / "a.dgm"
    argv = ["local-alpha", "--in", str(cross), "--x", "0,0", "--r", "0.25", "--eps", "0.02",
            "--max-scale", "0.12", "--max-dim", "1", "--out", str(out)]
    assert main(argv) == 0
    m = meta(tmp_path / "a.dgm.meta")
    assert float(m["bound"]) == pytest.approx(0.2176, abs=1e-12)
    assert m["pipeline"] == "alpha" and float(m["max_scale"]) == 0.12
    assert float(m["epsilon"]) == 0.02 and float(m["r"]) == 0.25
    d = read_diagram(out)
    assert sum(1 for k, b, dd in d if k == 1 and dd - b > 0.05) == 3


def test_local_alpha_lapsed(cross, capsys):
    argv = ["local-alpha", "--in", str(cross), "--x", "0,0", "--r", "0.25", "--eps", "0.02",
            "--max-scale", "0.3"]
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and len(err.strip().splitlines()) == 1


def test_local_r_outputs(tmp_path):
    pts = tmp_path / "c.pts"
    main(["gen", "--kind", "circle", "--eps", "0.05", "--out", str(pts)])
    out = tmp_path / "r.dgm"
    assert main(["local-r", "--in", str(pts), "--x", "1,0", "--eps", "0.05", "--out", str(out)]) == 0
    m = meta(tmp_path / "r.dgm.meta")
    assert float(m["bound"]) == pytest.approx(0.2) and m["pipeline"] == "r"
    assert "assumes_0" in m
    sub, rel = read_diagram(out), read_diagram(tmp_path / "r.dgm.rel")
    assert len(sub) == len(rel)
    assert {(k + 1, -d, -b) for k, b, d in sub} == set(rel.points)


def test_local_r_stdout(tmp_path, capsys):
    pts = tmp_path / "p.pts"
    pts.write_text("0 0\n1 0\n")
    assert main(["local-r", "--in", str(pts), "--x", "0,0", "--eps", "0.6"]) == 0
    out = capsys.readouterr().out
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert body == ["0 -1.0 inf"]


def test_bottleneck_self_and_dim(tmp_path, capsys):
    a, b = tmp_path / "a.dgm", tmp_path / "b.dgm"
    a.write_text("# demo\n0 0 1\n1 0.5 2\n")
    b.write_text("0 0 1.25\n")
    assert main(["bottleneck", str(a), str(a)]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["bottleneck", str(a), str(b), "--dim", "0"]) == 0
    assert float(capsys.readouterr().out) == 0.25
    assert main(["bottleneck", str(a), str(b)]) == 0
    assert float(capsys.readouterr().out) == 0.75


def test_check_chain(cross, capsys):
    assert main(["check-chain", "--in", str(cross), "--alpha", "0.05", "--max-dim", "1"]) == 0
    assert capsys.readouterr().out.strip() == "PASS"


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["gen", "--kind", "torus", "--eps", "0.1"],
    ["gen", "--kind", "circle", "--eps", "-1"],
    ["rips", "--max-scale", "1"],
    ["local-alpha", "--in", "x.pts", "--x", "0,a", "--r", "1", "--eps", "0.1", "--max-scale", "0.5"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_missing_and_malformed_input(tmp_path, capsys):
    assert main(["rips", "--in", str(tmp_path / "nope.pts"), "--max-scale", "1"]) == 1
    bad = tmp_path / "bad.pts"
    bad.write_text("0 0\n1\n")
    assert main(["rips", "--in", str(bad), "--max-scale", "1"]) == 1
    errs = capsys.readouterr().err.splitlines()
    assert len(errs) == 2 and all(e.startswith("error:") for e in errs)


def test_basepoint_dimension_mismatch(cross, capsys):
    argv = ["local-alpha", "--in", str(cross), "--x", "0,0,0", "--r", "0.25", "--eps", "0.02",
            "--max-scale", "0.1"]
    assert main(argv) == 1


def test_parse_config():
    cfg = parse(["local-alpha", "--in", "a", "--x", "1,2", "--r", "1", "--eps", "0.1", "--max-scale", "0.5"])
    assert cfg.command == "local-alpha" and cfg.options["x"] == (1.0, 2.0)
    assert cfg.options["max_dim"] == 1


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "localhom", *args], cwd=cwd,
                          capture_output=True, text=True)


def test_byte_identical_reruns(tmp_path):
    outs = []
    for run in ("1", "2"):
        d = tmp_path / run
        d.mkdir()
        assert _cli("gen", "--kind", "cross2d", "--eps", "0.05", "--out", "c.pts", cwd=d).returncode == 0
        res = _cli("local-alpha", "--in", "c.pts", "--x", "0,0", "--r", "0.25", "--eps", "0.05",
                   "--max-scale", "0.1", "--out", "a.dgm", cwd=d)
        assert res.returncode == 0, res.stderr
        assert _cli("local-r", "--in", "c.pts", "--x", "0,0", "--eps", "0.05", "--out", "r.dgm",
                    cwd=d).returncode == 0
        outs.append([(d / f).read_bytes() for f in
                     ("c.pts", "a.dgm", "a.dgm.meta", "r.dgm", "r.dgm.meta", "r.dgm.rel")])
    assert outs[0] == outs[1]


def test_lapsed_exit_code_from_process(tmp_path):
    assert _cli("gen", "--kind", "segment", "--eps", "0.1", "--out", "s.pts", cwd=tmp_path).returncode == 0
    res = _cli("local-alpha", "--in", "s.pts", "--x", "0.5,0", "--r", "0.25", "--eps", "0.1",
               "--max-scale", "0.3", cwd=tmp_path)
    assert res.returncode == 2 and res.stderr.startswith("error:")


def test_output_diagrams_roundtrip(cross, tmp_path):
    out = tmp_path / "a.dgm"
    main(["local-alpha", "--in", str(cross), "--x", "0,0", "--r", "0.25", "--eps", "0.02",
          "--max-scale", "0.1", "--out", str(out)])
    text = out.read_text()
    d = PersistenceDiagram.from_text(text)
    assert d.to_text() == text
    assert read_diagram(out) == d
