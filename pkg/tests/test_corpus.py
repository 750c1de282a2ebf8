import json
from importlib import resources

import networkx as nx
import pytest

from polyforge.corpus import cycle_polygon, prufer_decode, random_partial_polygon, random_tree
from polyforge.errors import BadSize, BadGonality
from polyforge.incidence import girth, is_partial_polygon


def test_prufer_covers_all_labelled_trees():
    import itertools
    trees = {tuple(prufer_decode(list(seq), 4)) for seq in itertools.product(range(4), repeat=2)}
    assert len(trees) == 16
    for edges in trees:
        assert nx.is_tree(nx.Graph(edges))


def test_random_tree_is_a_function_of_seed_and_size():
    assert random_tree(3, 7) == random_tree(3, 7)
    assert random_tree(7, 6).edges == ((0, 3), (1, 2), (1, 5), (2, 3), (2, 4))
    golden = json.loads(resources.files("polyforge").joinpath("data/golden.json").read_text())
    assert [list(e) for e in random_tree(7, 6).edges] == golden["random_tree_7_6"]


@pytest.mark.parametrize("size", [1, 2, 5, 9])
def test_random_tree_shape(size):
    t = random_tree(0, size)
    g = nx.Graph()
    g.add_nodes_from(t.vertices)
    g.add_edges_from(t.edges)
    assert nx.is_tree(g) and len(t) == size


@pytest.mark.parametrize("size", [0, -1, 2.5, "3"])
def test_random_tree_bad_size(size):
    with pytest.raises(BadSize):
        random_tree(0, size)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_partial_polygon(n):
    for seed in range(10):
        P = random_partial_polygon(seed, n, 24)
        assert is_partial_polygon(P.structure, n)
        assert len(P) == 24
    assert random_partial_polygon(1, n, 20).structure.incidences() == \
        random_partial_polygon(1, n, 20).structure.incidences()


def test_random_partial_polygon_errors():
    with pytest.raises(BadSize):
        random_partial_polygon(0, 3, 1)
    with pytest.raises(BadGonality):
        random_partial_polygon(0, 2, 10)


def test_cycle_polygon():
    P = cycle_polygon(12, 5)
    assert girth(P.structure) == 12
    with pytest.raises(BadSize):
        cycle_polygon(8, 5)
    with pytest.raises(BadSize):
        cycle_polygon(13, 5)
