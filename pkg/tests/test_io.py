import json

import pytest

from polyforge import io
from polyforge.completion import free_completion
from polyforge.confinement import hyperfree_tuples
from polyforge.coxeter import INF, reduce_word, triangle
from polyforge.corpus import random_tree
from polyforge.gadgets import gadget_A, gadget_B
from polyforge.incidence import PartialPolygon, build_structure
from polyforge.chambers import BuildParams, build, check_conditions


def _fano_flags():
    points = [f"p{k}" for k in range(7)]
    lines = [f"l{k}" for k in range(7)]
    inc = [(f"p{(k + d) % 7}", f"l{k}") for k in range(7) for d in (0, 1, 3)]
    return build_structure(points, lines, inc)


def _same(P, Q):
    return (P.n == Q.n and set(P.structure.ids) == set(Q.structure.ids)
            and set(map(frozenset, P.structure.incidences())) == set(map(frozenset, Q.structure.incidences()))
            and P.labels == Q.labels)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_polygon_roundtrip(n):
    for P in (gadget_A(n), gadget_B(n).B):
        text = io.dumps(io.polygon_to_dict(P))
        assert _same(io.polygon_from_dict(json.loads(text)), P)


def test_dumps_is_stable():
    P = gadget_A(4)
    assert io.dumps(io.polygon_to_dict(P)) == io.dumps(io.polygon_to_dict(P))
    assert io.dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'


def test_polygon_needs_gonality():
    with pytest.raises(ValueError):
        io.polygon_from_dict({"points": ["p"], "lines": [], "incidences": []})


def test_trace_roundtrip():
    trace = free_completion(gadget_A(3), 2)
    back = io.trace_from_dict(json.loads(io.dumps(io.trace_to_dict(trace))))
    assert len(back.stages) == len(trace.stages)
    assert all(_same(a, b) for a, b in zip(back.stages, trace.stages))
    assert back.processed_pairs == trace.processed_pairs
    assert back.stabilized == trace.stabilized and back.truncated == trace.truncated


def test_hyperfree_roundtrip():
    P = PartialPolygon(build_structure(["a", "c"], ["b"], [("a", "b"), ("c", "b")]), 3)
    tuples = hyperfree_tuples(P)
    assert tuples
    for h in tuples:
        assert io.hyperfree_from_dict(json.loads(io.dumps(io.hyperfree_to_dict(h)))) == h


def test_tree_roundtrip():
    t = random_tree(5, 6)
    assert io.tree_from_dict(json.loads(io.dumps(io.tree_to_dict(t)))) == t


def test_element_roundtrip():
    D = triangle(3, 4, INF)
    x = reduce_word(D, "1213")
    assert io.element_from_json(D, io.element_to_json(x)) == x


@pytest.mark.parametrize("labels", [(3, 3, 3), (4, 4, 4), (3, INF, INF)])
def test_chamber_system_roundtrip(labels):
    cs = build(BuildParams(triangle(*labels), 3))
    data = json.loads(io.dumps(io.chamber_system_to_dict(cs)))
    back = io.chamber_system_from_dict(data)
    assert back.chambers == cs.chambers and back.rho == cs.rho and back.stage == cs.stage
    for g in "123":
        assert sorted(map(sorted, back.panels(g))) == sorted(map(sorted, cs.panels(g)))
    assert back.frontier == cs.frontier
    assert check_conditions(back).passed
    assert io.dumps(io.chamber_system_to_dict(back)) == io.dumps(data)


def test_chamber_system_missing_panel():
    cs = build(BuildParams(triangle(3, 3, 3), 1))
    data = io.chamber_system_to_dict(cs)
    data["panels"]["2"] = data["panels"]["2"][1:]
    with pytest.raises(ValueError):
        io.chamber_system_from_dict(data)


def test_dot_single_flag():
    s = build_structure(["p"], ["L"], [("p", "L")])
    assert io.export_dot(s) == (
        'graph G {\n'
        '  "L" [shape=circle, style=filled, fillcolor=white, label=""];\n'
        '  "p" [shape=circle, style=filled, fillcolor=black, label=""];\n'
        '  "p" -- "L";\n'
        '}\n'
    )


def test_dot_heawood():
    text = io.export_dot(_fano_flags())
    assert text.startswith("graph G {\n") and text.endswith("}\n")
    assert text.count("fillcolor=black") == 7
    assert text.count("fillcolor=white") == 7
    assert text.count(" -- ") == 21


def test_dot_empty():
    assert io.export_dot(build_structure([], [], [])) == "graph G {\n}\n"


def test_dot_quotes_names():
    s = build_structure(['a"b'], ["x y"], [('a"b', "x y")])
    assert '"a\\"b"' in io.export_dot(s)


def test_chamber_system_dot():
    cs = build(BuildParams(triangle(3, 3, 3), 1))
    text = io.chamber_system_dot(cs)
    assert text.count("[label=") == len(cs) + 3 * 2


def test_save_and_load(tmp_path):
    path = tmp_path / "g.json"
    io.save_json(path, io.polygon_to_dict(gadget_A(3)))
    assert _same(io.polygon_from_dict(io.load_json(path)), gadget_A(3))
