import json
from pathlib import Path

import pytest

from mapperforge import serialize as ser
from mapperforge.cli import main
from mapperforge.complex import SimplicialComplex
from mapperforge.fixtures import (
    circle_points,
    eight_points,
    height_cover,
    height_lens,
    seven_vertex_graph,
)
from mapperforge.geometry import VPolytope
from mapperforge.mapper import IndexedCover, PointCloud


def write(path: Path, text: str) -> str:
    path.write_text(text)
    return str(path)


@pytest.fixture
def circle_files(tmp_path):
    return {
        "points": write(tmp_path / "X.csv", ser.points_to_csv(circle_points())),
        "lens": write(tmp_path / "lens.json", ser.dumps(ser.lens_to_json(height_lens()))),
        "cover": write(tmp_path / "cover.json", ser.dumps(ser.cover_to_json(height_cover()))),
    }


@pytest.fixture
def graph_files(tmp_path):
    return {
        "complex": write(tmp_path / "K.json", ser.dumps(ser.complex_to_json(seven_vertex_graph()))),
        "points": write(tmp_path / "X8.csv", ser.points_to_csv(eight_points())),
    }


def test_mapper_circle_fixture(circle_files, tmp_path, capsys):
    out = tmp_path / "run"
    args = ["mapper", "--points", circle_files["points"], "--lens", circle_files["lens"],
            "--cover", circle_files["cover"], "--cluster", "single-linkage", "--eps", "7/10"]
    assert main(args + ["--out-dir", str(out)]) == 0
    result = json.loads((out / "mapper.json").read_text())
    assert result["complex"]["faces"] == [[0, 1], [0, 2], [1, 3], [2, 4], [3, 5], [4, 6], [5, 7], [6, 7]]
    assert result["provenance"]["0"] == {"cover_index": 0, "cluster": 0, "members": [7, 8, 9]}
    dot = (out / "mapper.dot").read_text()
    assert dot.startswith("graph mapper {") and "v0 -- v1;" in dot and "{7,8,9}" in dot
    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest["inputs"]) == {"points", "lens", "cover"}
    assert main(args + ["--format", "dot"]) == 0
    assert capsys.readouterr().out == dot


def test_mapper_empty_cover(circle_files, tmp_path, capsys):
    empty = write(tmp_path / "empty.json", "[]")
    assert main(["mapper", "--points", circle_files["points"], "--lens", circle_files["lens"], "--cover", empty]) == 0
    assert json.loads(capsys.readouterr().out)["complex"]["faces"] == []


def test_mapper_lens_missing_point(circle_files, tmp_path, capsys):
    lens = write(tmp_path / "bad.json", json.dumps({"kind": "face", "table": {"0": [0]}}))
    cover = write(tmp_path / "star.json", json.dumps([{"type": "star", "vertex": 0}]))
    assert main(["mapper", "--points", circle_files["points"], "--lens", lens, "--cover", cover]) == 2
    assert "point id 1" in capsys.readouterr().err


def test_mapper_incompatible(circle_files, tmp_path):
    cover = write(tmp_path / "star.json", json.dumps([{"type": "star", "vertex": 0}]))
    assert main(["mapper", "--points", circle_files["points"], "--lens", circle_files["lens"], "--cover", cover]) == 3


def test_malformed_csv(tmp_path, circle_files):
    bad = write(tmp_path / "bad.csv", "id,x0\n0,abc\n")
    assert main(["mapper", "--points", bad, "--lens", circle_files["lens"], "--cover", circle_files["cover"]]) == 2


@pytest.mark.parametrize("backend", ["star", "geometric-star", "convex"])
def test_inverse_replays_through_mapper_and_iso(backend, graph_files, tmp_path, capsys):
    out = tmp_path / backend
    code = main(["inverse", backend, "--complex", graph_files["complex"], "--points", graph_files["points"],
                 "--seed", "0", "--out-dir", str(out)])
    assert code == 0
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["isomorphic"] and len(cert["mapping"]) == 7
    replay = tmp_path / f"{backend}-replay"
    assert main(["mapper", "--points", graph_files["points"], "--lens", str(out / "lens.json"),
                 "--cover", str(out / "cover.json"), "--out-dir", str(replay)]) == 0
    assert main(["iso", str(replay / "mapper.json"), graph_files["complex"]]) == 0


def test_inverse_star_out_file(graph_files, tmp_path):
    target = tmp_path / "params.json"
    assert main(["inverse", "star", "--complex", graph_files["complex"], "--points", graph_files["points"],
                 "--out", str(target)]) == 0
    params = json.loads(target.read_text())
    assert params["backend"] == "star" and params["certificate"]["isomorphic"]
    assert params["cover"][0] == {"type": "star", "vertex": 0}


def test_inverse_too_few_points(graph_files, tmp_path, capsys):
    few = write(tmp_path / "few.csv", ser.points_to_csv(PointCloud.anonymous(3)))
    assert main(["inverse", "star", "--complex", graph_files["complex"], "--points", few]) == 5
    assert "7" in capsys.readouterr().err


def test_inverse_search_exhausted(graph_files, capsys):
    code = main(["inverse", "convex", "--complex", graph_files["complex"], "--points", graph_files["points"],
                 "--max-trials", "0"])
    assert code == 4
    assert "search_exhausted" in capsys.readouterr().out


def test_inverse_is_deterministic(graph_files, tmp_path):
    for run in ("a", "b"):
        assert main(["inverse", "convex", "--complex", graph_files["complex"], "--points", graph_files["points"],
                     "--seed", "5", "--out-dir", str(tmp_path / "same")]) == 0
        (tmp_path / f"params_{run}.json").write_bytes((tmp_path / "same" / "params.json").read_bytes())
    assert (tmp_path / "params_a.json").read_bytes() == (tmp_path / "params_b.json").read_bytes()


def ring_family():
    def bar(lo, hi):
        return VPolytope(tuple((x, y, z) for x in (lo[0], hi[0]) for y in (lo[1], hi[1]) for z in (lo[2], hi[2])))

    return [bar((0, 0, 0), (4, 1, 1)), bar((3, 0, 0), (4, 4, 1)), bar((0, 3, 0), (4, 4, 1)), bar((0, 0, 0), (1, 4, 1))]


def test_certify_command(tmp_path, capsys):
    fam = {"sets": [[ser.fmt_vec(g) for g in P.generators] for P in ring_family()]}
    famfile = write(tmp_path / "fam.json", json.dumps(fam))
    c4 = write(tmp_path / "c4.json", json.dumps({"faces": [[0, 1], [1, 2], [2, 3], [0, 3]]}))
    path = write(tmp_path / "p4.json", json.dumps({"faces": [[0, 1], [1, 2], [2, 3]]}))
    assert main(["certify", "--family", famfile, "--complex", c4]) == 0
    assert json.loads(capsys.readouterr().out)["certified"]
    assert main(["certify", "--family", famfile, "--complex", path]) == 1
    assert json.loads(capsys.readouterr().out) == {"certified": False, "vertices": [0, 3], "expected_face": False}


def test_iso_command(tmp_path, capsys):
    p4 = write(tmp_path / "p4.json", json.dumps({"faces": [[0, 1], [1, 2], [2, 3]]}))
    claw = write(tmp_path / "claw.json", json.dumps({"faces": [[0, 1], [0, 2], [0, 3]]}))
    assert main(["iso", p4, claw]) == 1
    assert main(["iso", p4, p4]) == 0


def test_extend_eval_and_radii(tmp_path, capsys):
    data = write(tmp_path / "f.json", json.dumps({"points": {"0": ["0"], "1": ["1"]}, "values": {"0": ["0"], "1": ["2"]}}))
    q = write(tmp_path / "q.csv", "id,x0\n5,1\n6,1/2\n")
    assert main(["extend", "eval", "--data", data, "--query", q]) == 0
    assert json.loads(capsys.readouterr().out)["values"] == {"5": ["2"], "6": ["1"]}

    cube = [[str(x), str(y), str(z)] for x in (0, 2) for y in (0, 2) for z in (0, 2)]
    omega = write(tmp_path / "omega.json", json.dumps({"sets": [cube]}))
    d3 = write(tmp_path / "f3.json", json.dumps({"points": {"0": ["0"]}, "values": {"0": ["1", "1", "1"]}, "lip_sq": "4"}))
    assert main(["extend", "radii", "--data", d3, "--omega", omega]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["radii_float"]["0"] - 0.2886751345948) < 1e-11


def test_extend_verify(graph_files, tmp_path, capsys):
    out = tmp_path / "cv"
    assert main(["inverse", "convex", "--complex", graph_files["complex"], "--points", graph_files["points"],
                 "--out-dir", str(out)]) == 0
    capsys.readouterr()
    X = ser.read_points_csv(graph_files["points"])
    near = write(tmp_path / "near.csv", "id,x0,x1\n100,0,0\n".replace("100,0,0", "100," + ",".join(ser.fmt_vec(X[1]))))
    # an exact copy of x1 is distance 0 away: inside its ball
    assert main(["extend", "verify", "--params", str(out / "params.json"), "--points", graph_files["points"],
                 "--new-points", near]) == 0
    assert json.loads(capsys.readouterr().out)["stable"]
    far = write(tmp_path / "far.csv", "id,x0,x1\n100,1000,1000\n")
    assert main(["extend", "verify", "--params", str(out / "params.json"), "--points", graph_files["points"],
                 "--new-points", far]) == 6


def test_extend_requires_flags():
    with pytest.raises(SystemExit):
        main(["extend", "eval"])
