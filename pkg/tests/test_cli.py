import io
import json

import pytest

from penthull.cli import run


def _run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_writes_k2(tmp_path, capsys):
    path = tmp_path / "k2.json"
    assert run(["gen", "-n", "2", "-o", str(path)]) == 0
    assert len(json.loads(path.read_text())["faces"]) == 36


def test_gen_is_deterministic(capsys):
    _, a, _ = _run(capsys, ["gen", "-n", "2"])
    _, b, _ = _run(capsys, ["gen", "-n", "2"])
    assert a == b


def test_map_point_from_stdin(capsys, monkeypatch):
    _, k1, _ = _run(capsys, ["gen", "-n", "1"])
    code, out, _ = _run(capsys, ["map-point", "--face", "0", "--xy", "0,0"], stdin=k1, monkeypatch=monkeypatch)
    assert code == 0
    res = json.loads(out)
    assert res["region"] == "blue"
    assert res["image"] == {"face": 0, "xy": [0.0, 0.0]}


def test_subdivide_matches_gen(capsys, monkeypatch):
    _, k1, _ = _run(capsys, ["gen", "-n", "1"])
    _, k2, _ = _run(capsys, ["gen", "-n", "2"])
    _, out, _ = _run(capsys, ["subdivide"], stdin=k1, monkeypatch=monkeypatch)
    assert out == k2


def test_dist_and_stats(capsys):
    code, out, _ = _run(capsys, ["dist", "-n", "1", "v:0", "v:5"])
    res = json.loads(out)
    assert code == 0 and res["edge"] == 1
    assert res["surface"]["lower"] <= 1.0 <= res["surface"]["upper"]
    _, out, _ = _run(capsys, ["stats", "-n", "2"])
    assert json.loads(out)["euler"] == 1


def test_ball(capsys):
    _, out, _ = _run(capsys, ["ball", "-n", "3", "--vertex", "100", "--radius", "2"])
    res = json.loads(out)
    assert res["root"] is not None and len(res["face_map"]) > 0


def test_verify_metrics_passes(capsys):
    code, out, _ = _run(capsys, ["verify", "--suite", "metrics", "--level", "3", "--samples", "30", "--seed", "7"])
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["checks"][0]["max_ratio"] <= 3


def test_verify_failure_exit_code(capsys):
    code, _, err = _run(capsys, ["verify", "--suite", "metrics", "--level", "2", "--samples", "5", "--tol", "-10"])
    assert code == 1
    assert "violated: metrics." in err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["gen"]) == 2
    assert run(["nope"]) == 2
    assert run(["verify", "--suite", "everything"]) == 2


def test_render_limit(capsys):
    assert run(["render-svg", "--depth", "7"]) == 2


def test_render_svg(capsys):
    code, out, _ = _run(capsys, ["render-svg", "--depth", "1"])
    assert code == 0 and out.count("<path") == 6


def test_quadpent_hull_and_chain(tmp_path, capsys, monkeypatch):
    q = tmp_path / "q2.json"
    assert run(["quadpent", "-n", "2", "-o", str(q)]) == 0
    code, out, _ = _run(capsys, ["hull-dist", str(q), str(q), "--discrete"])
    res = json.loads(out)
    assert code == 0 and res["lower"] == 0.0 and "discrete" in res
    code, out, _ = _run(capsys, ["chain", "-n", "4", "--depth", "3"])
    assert code == 0 and len(json.loads(out)["chain"]) == 4
    code, out, _ = _run(capsys, ["chain", "--depth", "3"], stdin=q.read_text(), monkeypatch=monkeypatch)
    assert code == 1 and json.loads(out)["achieved"] == 2


def test_eps_net_compare(capsys):
    code, out, _ = _run(capsys, ["eps-net", "-n", "3", "--compare", "4"])
    assert code == 0 and json.loads(out)["stable"]
