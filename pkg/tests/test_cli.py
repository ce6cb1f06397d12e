import json
import subprocess
import sys

import pytest

from volrig import cli, load_example, shifting

DATA = {
    "tetra": {"n": 4, "d": 2, "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4]]},
    "bipyramid": load_example("bipyramid").to_json(),
}


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return _write


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_rigidity_and_rank(write, capsys):
    path = write("w.json", DATA["tetra"])
    code, out, _ = run(["rigidity", path], capsys)
    report = json.loads(out)
    assert code == 0 and report["rigid"] and report["rank"] == 3
    code, out, _ = run(["rank", path], capsys)
    assert json.loads(out)["rank"] == 3
    code, out, _ = run(["independent", write("b.json", DATA["bipyramid"])], capsys)
    assert json.loads(out)["independent"] is False
    code, out, _ = run(["basis", path], capsys)
    assert json.loads(out)["basis"] is True


def test_generators(capsys):
    code, out, _ = run(["lgrc", "--n", "5", "--d", "2"], capsys)
    assert json.loads(out)["facets"] == [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]]
    code, out, _ = run(["complete", "--n", "4", "--d", "2"], capsys)
    assert len(json.loads(out)["facets"]) == 4
    code, out, _ = run(["flexdim", "--n", "6", "--d", "3"], capsys)
    assert json.loads(out)["trivial_flex_dim"] == 11
    code, _, err = run(["lgrc", "--n", "5"], capsys)
    assert code == 2 and "--n and --d" in err


def test_measure(write, capsys):
    cx = write("t.json", {"n": 3, "d": 2, "facets": [[1, 2, 3]]})
    conf = write("p.json", {"points": [[0, 0], [1, 0], [0, "1/2"]]})
    code, out, _ = run(["measure", cx, "--config", conf, "--matrix"], capsys)
    report = json.loads(out)
    assert code == 0 and report["volumes"] == [{"simplex": [1, 2, 3], "volume": "1/2"}]
    assert "rigidity_matrix" in report
    bad = write("q.json", {"points": [[0, 0], [1]]})
    assert run(["measure", cx, "--config", bad], capsys)[0] == 2


def test_betti_phi_bounds(write, capsys):
    path = write("b.json", DATA["bipyramid"])
    assert json.loads(run(["betti", path], capsys)[1])["betti"] == [0, 0, 1]
    phi = json.loads(run(["phi", path], capsys)[1])
    assert phi["rank"] == 5 and phi["cross_check"]["agree"]
    bounds = json.loads(run(["bounds", path], capsys)[1])
    assert bounds["meets_all"] and "caveat" in bounds


def test_orient(write, capsys):
    directed = write("o.json", {"edges": [[2, 3], [2, 4], [2, 5], [3, 4], [5, 3]]})
    report = json.loads(run(["orient", directed, "--check"], capsys)[1])
    assert report == {"acyclic": True, "act": None, "act_free": True}
    k4 = write("k4.json", {"edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]})
    assert json.loads(run(["orient", k4, "--find"], capsys)[1])["found"] is False
    bowtie = write("bt.json", {"edges": [[2, 3], [4, 3], [4, 2], [5, 2], [5, 6], [2, 6]]})
    assert json.loads(run(["orient", bowtie], capsys)[1])["act_free"] is False
    assert json.loads(run(["orient", bowtie, "--vertex-distinct"], capsys)[1])["act_free"] is True
    assert run(["orient", write("e.json", {"edges": [[1, 2, 3]]})], capsys)[0] == 2


def test_rigid2_comb_and_shift(write, capsys):
    path = write("b.json", DATA["bipyramid"])
    assert json.loads(run(["rigid2-comb", path], capsys)[1])["rigid"] is True
    fig = write("f.json", load_example("mobius_5").to_json())
    report = json.loads(run(["shift", fig], capsys)[1])
    assert [4, 5] in report["maximal_faces"]
    assert report["properties"]["ok"] and "shifted complex is not pure" in report["warnings"]
    lg = json.loads(run(["shift", fig, "--order", "lgrc-first"], capsys)[1])
    assert lg["shifted"]["extension"] == "lgrc-first"


def test_global_certify_and_replay(write, capsys):
    path = write("b.json", DATA["bipyramid"])
    code, out, _ = run(["global-certify", path], capsys)
    cert = write("c.json", out)
    assert json.loads(out)["certificate"]["verdict"] == "certified"
    code, out, _ = run(["global-replay", path, "--cert", cert], capsys)
    assert code == 0 and json.loads(out)["valid"] is True
    other = write("w.json", DATA["tetra"])
    assert json.loads(run(["global-replay", other, "--cert", cert], capsys)[1])["valid"] is False
    pent = write("p.json", load_example("pentagonal_bipyramid").to_json())
    assert json.loads(run(["global-certify", pent], capsys)[1])["certificate"]["verdict"] == "unknown"
    assert run(["global-replay", path], capsys)[0] == 2


@pytest.mark.parametrize("name", ["open_tetrahedron", "bipyramid", "flexible_8", "pentagonal_bipyramid", "mobius_5"])
def test_analyze_agrees(write, capsys, name):
    path = write("x.json", load_example(name).to_json())
    code, out, _ = run(["analyze", path], capsys)
    report = json.loads(out)
    assert code == 0 and report["all_agree"]
    assert report["agreement"]["rank_vs_shift"]


def test_analyze_reports_disagreement(write, capsys, monkeypatch):
    monkeypatch.setattr(shifting, "shift_rigidity_test", lambda *a, **k: False)
    code, out, err = run(["analyze", write("w.json", DATA["tetra"])], capsys)
    assert code == 3 and "theory-violation" in err
    assert json.loads(out)["agreement"]["rank_vs_shift"] is False


def test_bad_input(write, capsys):
    assert run(["rank", write("bad.json", "{not json")], capsys)[0] == 2
    assert run(["rank", write("bad2.json", {"n": 3, "d": 2, "facets": [[1, 2, 9]]})], capsys)[0] == 2
    assert run(["rank", "/nonexistent/file.json"], capsys)[0] == 2
    assert run(["rank", write("w.json", DATA["tetra"]), "--seed", "abc"], capsys)[0] == 2
    assert run(["rank", write("w.json", DATA["tetra"]), "--prime", "15"], capsys)[0] == 2
    assert run(["nosuch"], capsys)[0] == 2
    impure = write("i.json", {"n": 5, "d": 2, "facets": [[1, 2, 3], [4, 5]]})
    code, _, err = run(["rigidity", impure], capsys)
    assert code == 2 and "not pure" in err
    assert run(["rigidity", impure, "--ignore-impure"], capsys)[0] == 0


def test_deterministic_output(write, capsys):
    path = write("b.json", DATA["bipyramid"])
    a = run(["analyze", path, "--seed", "17"], capsys)[1]
    b = run(["analyze", path, "--seed", "17"], capsys)[1]
    assert a == b
    c = run(["analyze", path, "--seed", "random"], capsys)[1]
    assert json.loads(c)["all_agree"]


def test_text_format(write, capsys):
    code, out, _ = run(["rigidity", write("w.json", DATA["tetra"]), "--format", "text"], capsys)
    assert code == 0 and "rigid: true" in out


def test_stdin_and_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "volrig", "rank"],
        input=json.dumps(DATA["tetra"]),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["rank"] == 3
