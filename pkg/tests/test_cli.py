import json

import pytest

from rayspace.cli import run

from conftest import GRAPH_TEXTS


@pytest.fixture
def graph_file(tmp_path):
    def write(name: str):
        p = tmp_path / f"{name}.graph"
        p.write_text(GRAPH_TEXTS[name].replace("; ", "\n") + "\n")
        return str(p)

    return write


def test_dist_infinite_pair(graph_file, capsys):
    gf = graph_file("G_R")
    code = run(["dist", "--graph", gf, "--a", "R1:[1/4,1/2]", "--b", "R1:[1/4,inf)"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "inf"


def test_dist_rational_output(graph_file, capsys):
    gf = graph_file("G_I")
    assert run(["dist", "--graph", gf, "--a", "E1:[0,1]", "--b", "E1:{1/2}"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"
    assert run(["dist", "--graph", gf, "--a", "E1:{0}", "--b", "E1:[0,1]", "--directed"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_wedge_real_line(capsys):
    assert run(["wedge", "--expr", "(ray ∨ ray)"]) == 0
    out = capsys.readouterr().out
    assert "components 4" in out


def test_classify_self_constant_path(graph_file, capsys, tmp_path):
    gf = graph_file("G_LINE")
    dump = tmp_path / "path.tsv"
    code = run(
        ["classify", "--graph", gf, "--a", "R1:[0,2]", "--b", "R1:[0,2]", "-n", "1",
         "--emit-path", str(dump), "--samples", "8"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "same=true" in out and "path_stages=1" in out
    lines = dump.read_text().strip().splitlines()
    assert lines[0] == "t\tset"
    assert len(lines) == 1 + 9  # header + M+1 samples
    assert all(line.split("\t")[1] == "R1:[0,2]" for line in lines[1:])


def test_classify_witness_ray(graph_file, capsys):
    gf = graph_file("G_LINE")
    code = run(["classify", "--graph", gf, "--a", "R1:[0,inf)", "--b", "R2:[0,inf)", "-n", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "same=false" in out
    assert "witness_ray=1" in out
    assert "delta_a={1}" in out and "delta_b={2}" in out


def test_path_subcommand(graph_file, capsys):
    gf = graph_file("G_R")
    assert run(["path", "--graph", gf, "--a", "R1:[2,inf)", "-n", "1"]) == 0
    out = capsys.readouterr().out
    assert "stages=3" in out
    assert "kind=F0" in out and "lipschitz=2" in out
    assert "end=R1:[0,inf)" in out

    assert run(["path", "--graph", gf, "--a", "R1:{1}", "-n", "1", "--vietoris"]) == 0
    out = capsys.readouterr().out
    assert "stages=4" in out and "kind=GAMMA" in out


def test_vietoris_subcommand(graph_file, capsys):
    gf = graph_file("G_I")
    code = run(
        ["vietoris", "--graph", gf, "--a", "E1:[3/10,2/5]",
         "--open", "ball E1:1/2 3/10"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "upper=true" in out and "lower 1=true" in out and "basic=true" in out


def test_vietoris_witness(graph_file, capsys):
    gf = graph_file("G_LINE")
    code = run(
        ["vietoris", "--graph", gf, "--a", "R1:{0}",
         "--open", "all", "--witness", "1/2", "--res", "1/1000"]
    )
    assert code == 0
    assert "witness delta=1/2" in capsys.readouterr().out


def test_oracle_subcommand(graph_file, capsys):
    gf = graph_file("G_LINE")
    code = run(
        ["oracle", "--graph", gf, "--step", "1/2", "--trunc", "2", "--delta", "3/5", "-n", "1"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "components=4" in out
    assert out.count("component ") == 4


def test_validate_subcommand(graph_file, capsys):
    gf = graph_file("G_NOOSE")
    assert run(["validate", "--graph", gf]) == 0
    out = capsys.readouterr().out
    assert "ok=true" in out and "loop" in out and "ray 1=R1 at v" in out


def test_json_graph_input(tmp_path, capsys):
    doc = {
        "vertices": ["u", "v"],
        "edges": [{"id": "E1", "u": "u", "v": "v", "length": "3/2"}],
        "rays": [{"id": "R1", "attach": "v"}],
    }
    p = tmp_path / "g.json"
    p.write_text(json.dumps(doc))
    assert run(["dist", "--graph", str(p), "--a", "E1:{0}", "--b", "R1:{1}"]) == 0
    assert capsys.readouterr().out.strip() == "5/2"


def test_exit_codes(graph_file, tmp_path, capsys):
    gf = graph_file("G_I")
    assert run(["dist", "--graph", gf]) == 1  # usage: missing --a/--b
    assert run(["dist", "--graph", gf, "--a", "E1:[oops]", "--b", "E1:{0}"]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex u\nvertex w\n")
    assert run(["validate", "--graph", str(bad)]) == 2  # disconnected
    assert run(["path", "--graph", gf, "--a", "E1:{0} E1:{1/2} E1:{1}", "-n", "2"]) == 3
    gs = graph_file("G_STAR3")
    assert (
        run(["oracle", "--graph", gs, "--step", "1/4", "--trunc", "2", "--delta", "3/5",
             "-n", "2", "--max-pieces", "3", "--cap", "100"])
        == 4
    )
    err = capsys.readouterr().err
    assert 'error kind=cap' in err


def test_deterministic_output(graph_file, capsys):
    gf = graph_file("G_LINE")
    args = ["oracle", "--graph", gf, "--step", "1/2", "--trunc", "1", "--delta", "3/5", "-n", "1"]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    assert capsys.readouterr().out == first


def test_path_vietoris_emit(graph_file, capsys, tmp_path):
    gf = graph_file("G_LINE")
    dump = tmp_path / "vp.tsv"
    code = run(["path", "--graph", gf, "--a", "R1:{0}", "-n", "1", "--vietoris",
                "--emit-path", str(dump), "--samples", "4"])
    assert code == 0
    lines = dump.read_text().strip().splitlines()
    assert len(lines) == 6
    assert lines[-1] == "1\tR1:[0,inf) R2:[0,inf)"  # the whole space at t=1


def test_vietoris_witness_failure_output(graph_file, capsys):
    # the composite path sits at {v} when t0=1/2, inside the tiny ball, but
    # every sampled neighborhood contains values escaping it
    gf = graph_file("G_LINE")
    code = run(["vietoris", "--graph", gf, "--a", "R1:[0,1]",
                "--open", "ball R1:0 1/1000",
                "--witness", "1/2", "--res", "1/4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "witness=failure" in out and "first_bad_t=" in out
