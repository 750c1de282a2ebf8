import itertools

import networkx as nx
import pytest

from polyforge.coxeter import INF, CoxeterDiagram, GroupElement, ball, triangle
from polyforge.errors import ConfigError, NoLargeLabel, SphericalRank3Residue, UnknownChamber
from polyforge.chambers import BuildParams, build, check_conditions, residue
from polyforge.tree_codec import Tree


def _built(labels, depth, q=3):
    return build(BuildParams(triangle(*labels), depth, q))


def _panel_graph(cs, i, j):
    g = nx.Graph()
    for c in cs.chambers:
        g.add_edge((i, cs.panel_of[i][c]), (j, cs.panel_of[j][c]))
    return g


@pytest.mark.parametrize("labels", [(3, 3, 3), (3, INF, INF), (INF, INF, INF), (4, 4, 4)])
@pytest.mark.parametrize("q", [3, 4])
def test_stage_one(labels, q):
    cs = _built(labels, 1, q)
    assert len(cs) == 1 + 3 * (q - 1)
    for g in "123":
        assert len(cs.panel("c0", g)) == q


@pytest.mark.parametrize("labels,sizes", [
    ((3, 3, 3), [1, 7, 31, 103]),
    ((3, INF, INF), [1, 7, 31, 119]),
    ((INF, INF, INF), [1, 7, 31, 127]),
])
def test_stage_sizes(labels, sizes):
    cs = _built(labels, 3)
    assert [len(cs.restricted(k)) for k in range(4)] == sizes


def test_all_infinite_stage_sizes_follow_the_tree_count():
    # every panel branches freely: stage n adds 3 * 2^(n-1) * (q-1)^n chambers
    cs = _built((INF, INF, INF), 4)
    for n in range(1, 5):
        new = len(cs.restricted(n)) - len(cs.restricted(n - 1))
        assert new == 3 * 2 ** (n - 1) * 2 ** n


@pytest.mark.parametrize("labels", [(3, 3, 3), (3, INF, INF), (INF, INF, INF), (4, 4, 4), (3, 4, INF)])
def test_conditions_hold_at_every_stage(labels):
    depth = 3
    cs = _built(labels, depth)
    for n in range(depth + 1):
        rep = check_conditions(cs, n=n)
        assert rep.passed, rep.violations
        assert {x.word for x in cs.restricted(n).rho.values()} == {x.word for x in ball(cs.diagram, n)}


def test_rank_four_diagram():
    D = CoxeterDiagram("abcd", [("a", "b", 3), ("b", "c", INF), ("c", "d", 3),
                                ("a", "c", INF), ("a", "d", INF), ("b", "d", INF)])
    cs = build(BuildParams(D, 3))
    rep = check_conditions(cs)
    assert rep.passed, rep.violations
    assert rep.residues_checked > 0


def test_large_labels_skip_only_deficient_residues():
    cs = _built((5, 5, 5), 3)
    rep = check_conditions(cs)
    assert rep.passed, rep.violations
    if rep.residues_skipped:
        assert cs.deficient


def test_closed_triangle_residue_is_a_projective_plane():
    cs = _built((3, 3, 3), 3)
    res = residue(cs, "c0", ("1", "2"))
    assert len(res) == 21
    g = _panel_graph(res, "1", "2")
    assert nx.is_isomorphic(g, nx.heawood_graph())
    assert not cs.deficient


def test_closed_square_residue_is_a_quadrangle():
    cs = _built((4, 4, 4), 4)
    res = residue(cs, "c0", ("1", "2"))
    g = _panel_graph(res, "1", "2")
    # GQ(2, 2): 15 points, 15 lines, 45 flags, girth 8
    assert len(res) == 45 and g.number_of_nodes() == 30
    assert nx.girth(g) == 8 and nx.diameter(g) == 4
    assert all(d == 3 for _, d in g.degree())


def test_open_residue_is_a_tree():
    cs = _built((3, INF, INF), 3)
    res = residue(cs, "c0", ("1", "3"))
    g = _panel_graph(res, "1", "3")
    assert nx.is_tree(g)


def test_corrupted_type_map_is_detected():
    cs = _built((3, 3, 3), 2)
    victim = next(c for c in cs.chambers if cs.rho[c].length == 2)
    cs.rho[victim] = GroupElement(("3",))
    assert not check_conditions(cs).passed


def test_merged_panel_is_detected():
    cs = _built((INF, INF, INF), 2)
    a, b = [c for c in cs.chambers if cs.rho[c].word == ("1",)][:2]
    pid = cs.panel_of["2"][a]
    old = cs.panel_of["2"][b]
    cs.members["2"][old].remove(b)
    cs.members["2"][pid].append(b)
    cs.panel_of["2"][b] = pid
    rep = check_conditions(cs)
    assert not rep.passed


def test_stage_beyond_depth():
    cs = _built((3, 3, 3), 1)
    rep = check_conditions(cs, n=2)
    assert not rep.passed


def test_frontier_lies_on_the_outer_sphere():
    cs = _built((INF, INF, INF), 2)
    assert cs.frontier
    assert all(cs.rho[c].length == 2 for c in cs.frontier)


def test_residue_unknown_chamber():
    cs = _built((3, 3, 3), 1)
    with pytest.raises(UnknownChamber):
        residue(cs, "c999", ("1", "2"))
    with pytest.raises(UnknownChamber):
        cs.panel("nope", "1")


def test_parameter_validation():
    with pytest.raises(ConfigError):
        build(BuildParams(triangle(3, 3, 3), 2, thickness=2))
    with pytest.raises(ConfigError):
        build(BuildParams(triangle(3, 3, 3), -1))
    with pytest.raises(SphericalRank3Residue):
        build(BuildParams(triangle(2, 3, 5), 2))
    with pytest.raises(NoLargeLabel):
        build(BuildParams(CoxeterDiagram("ab", [("a", "b", 2)]), 2))


def test_residue_models_follow_the_seed_tree():
    seed = Tree([0, 1, 2], [(0, 1), (1, 2)])
    cs = build(BuildParams(triangle(3, INF, 4), 1, residue_seed=seed))
    models = cs.residue_models
    assert models["1,2"]["model"] == "polygon" and models["1,2"]["m"] == 3
    assert models["1,3"] == {"m": "inf", "model": "tree", "tree": models["1,3"]["tree"]}
    assert models["1,2"]["decoded"] == models["1,2"]["tree"]


def test_build_is_deterministic():
    a = _built((3, 4, INF), 3)
    b = _built((3, 4, INF), 3)
    assert a.chambers == b.chambers
    assert a.rho == b.rho
    assert a.panel_of == b.panel_of
