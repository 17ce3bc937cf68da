from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coarse_menger.cli import main
from coarse_menger.errors import InputError
from coarse_menger.graph import Graph
from coarse_menger.io import dumps_instance, instance_from_dict, loads_instance, parse_edge_list, read_instance
from coarse_menger.testbed import Instance, gen_figure1

from test_graph import graphs


# ---- instance files ------------------------------------------------------------

@st.composite
def instances(draw):
    g = draw(graphs(max_n=10))
    s = draw(st.frozensets(st.integers(0, g.n - 1)))
    t = draw(st.frozensets(st.integers(0, g.n - 1)))
    params = draw(st.dictionaries(st.sampled_from(["k", "c", "d"]), st.integers(0, 9)))
    seed = draw(st.none() | st.integers(0, 1000))
    named = draw(st.booleans())
    names = tuple(f"v{i}é" for i in range(g.n)) if named else None
    return Instance(g, s, t, params, draw(st.text(min_size=1, max_size=8)), seed, names)


@given(instances())
def test_round_trip_is_byte_stable(inst):
    text = dumps_instance(inst)
    back = loads_instance(text)
    assert back.graph == inst.graph and back.s == inst.s and back.t == inst.t
    assert back.params == inst.params and back.seed == inst.seed and back.names == inst.names
    assert back.label == inst.label
    assert dumps_instance(back) == text and text.endswith("\n")


def test_optional_keys_are_omitted():
    obj = json.loads(dumps_instance(Instance(Graph(2, [(0, 1)]), {0}, {1})))
    assert set(obj) == {"version", "n", "edges", "S", "T", "label"}


@pytest.mark.parametrize("obj", [
    [],
    {"n": 2, "edges": [], "S": [0]},
    {"n": 2, "edges": [], "S": [0], "T": [1], "extra": 1},
    {"n": 2, "edges": [[0, 1, 1]], "S": [0], "T": [1]},
    {"n": 2, "edges": [[0, True]], "S": [0], "T": [1]},
    {"n": 2, "edges": [], "S": [0.5], "T": [1]},
    {"n": 2, "edges": [], "S": [0], "T": [1], "params": {"q": 1}},
    {"n": 2, "edges": [], "S": [0], "T": [1], "params": {"k": -1}},
    {"n": 2, "edges": [], "S": [0], "T": [1], "version": 2},
    {"n": 2, "edges": [], "S": [0], "T": [1], "names": [1, 2]},
    {"n": 2, "edges": [], "S": [0], "T": [5]},
    {"n": 2, "edges": [], "S": [0], "T": [1], "label": 3},
])
def test_strict_parsing(obj):
    with pytest.raises(InputError):
        instance_from_dict(obj)


def test_bad_json():
    with pytest.raises(InputError):
        loads_instance("{")


def test_edge_list():
    g = parse_edge_list("# comment\n3 2\n0 1  # first\n\n1 2\n")
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]
    for text in ["", "3 2\n0 1\n", "3 1\n0 1 2\n", "3 1\n0 x\n", "2 1\n0 5\n"]:
        with pytest.raises(InputError):
            parse_edge_list(text)


# ---- command line ---------------------------------------------------------------

def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def _write(tmp_path, inst, name="inst.json"):
    p = tmp_path / name
    p.write_text(dumps_instance(inst), encoding="utf-8")
    return p


def test_gen_is_deterministic(tmp_path, capsys):
    a, out_a = run(capsys, "gen", "random_bounded_pw", 2, 12, "--seed", 5)
    b, out_b = run(capsys, "gen", "random_bounded_pw", 2, 12, "--seed", 5)
    assert a == b == 0 and out_a.out == out_b.out
    run(capsys, "gen", "grid", 2, 5, "-o", tmp_path / "g.json")
    assert read_instance(str(tmp_path / "g.json")).graph.n == 10


def test_gen_wrong_shape(capsys):
    code, out = run(capsys, "gen", "grid", 2)
    assert code == 1 and "shape" in out.err


def test_oracle_exit_codes(tmp_path, capsys):
    f = _write(tmp_path, gen_figure1())
    assert run(capsys, "oracle", f, "--mode", "paths", "--m", 3, "--c", 1)[0] == 3
    assert run(capsys, "oracle", f, "--mode", "paths", "--m", 3, "--c", 0)[0] == 0
    code, out = run(capsys, "oracle", f, "--mode", "separator", "--k", 2, "--r", 1, "--emit-json")
    assert code == 10 and json.loads(out.out)["found"]
    assert run(capsys, "oracle", f, "--mode", "separator", "--k", 2, "--r", 0)[0] == 3
    assert run(capsys, "oracle", f, "--mode", "paths", "--m", 3)[0] == 1


def test_solve_exit_codes(tmp_path, capsys):
    three = Instance(Graph(9, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]), {0, 3, 6}, {2, 5, 8},
                     {"k": 2, "c": 1, "d": 3})
    one = Instance(Graph(10, [(i, i + 1) for i in range(9)]), {0}, {9})
    f3, f1 = _write(tmp_path, three, "three.json"), _write(tmp_path, one, "one.json")
    code, out = run(capsys, "solve", f3)
    assert code == 0 and "verified: yes" in out.out
    assert run(capsys, "solve", f1, "--k", 1, "--c", 1, "--d", 3)[0] == 10
    # one.json has no stored params
    assert run(capsys, "solve", f1)[0] == 1
    assert run(capsys, "solve", f3, f1, "--k", 1, "--c", 1, "--d", 3)[0] == 10


def test_solve_json_schema(tmp_path, capsys):
    f = _write(tmp_path, Instance(Graph(3, [(0, 1), (1, 2)]), {0}, {2}, {"k": 1, "c": 1, "d": 3}))
    code, out = run(capsys, "solve", f, "--emit-json")
    rep = json.loads(out.out)
    assert code == 10
    assert set(rep) == {"file", "k", "c", "d", "kind", "certificate", "constants", "verified", "reason", "exit"}
    assert rep["certificate"]["kind"] == rep["kind"] == "separator" and rep["verified"] is True


def test_solve_batch_with_errors(tmp_path, capsys):
    f = _write(tmp_path, Instance(Graph(3, [(0, 1), (1, 2)]), {0}, {2}, {"k": 1, "c": 1, "d": 3}))
    code, out = run(capsys, "solve", f, tmp_path / "missing.json", "--jobs", 2, "--emit-json")
    reps = json.loads(out.out)
    assert code == 1 and len(reps) == 2 and "error" in reps[1]


def test_check_subdivision(tmp_path, capsys):
    run(capsys, "gen", "binary_tree", 3, "-o", tmp_path / "h3.json")
    assert run(capsys, "check-subdivision", tmp_path / "h3.json", "--d", 3, "--l", 1)[0] == 20
    run(capsys, "gen", "grid", 1, 6, "-o", tmp_path / "p.json")
    code, out = run(capsys, "check-subdivision", tmp_path / "p.json", "--d", 3, "--l", 4)
    assert code == 0 and "absent" in out.out


def test_pathwidth_and_import(tmp_path, capsys):
    el = tmp_path / "c5.txt"
    el.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n", encoding="utf-8")
    assert run(capsys, "import-edgelist", el, "--S", 0, "--T", 2, "-o", tmp_path / "c5.json")[0] == 0
    code, out = run(capsys, "pathwidth", tmp_path / "c5.json", "--emit-json")
    assert code == 0 and json.loads(out.out) == {"n": 5, "pathwidth": 2}


def test_bad_file_is_an_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{}", encoding="utf-8")
    code, out = run(capsys, "pathwidth", bad)
    assert code == 1 and out.err.startswith("error:")
    assert run(capsys, "pathwidth", tmp_path / "nope.json")[0] == 1
