import networkx as nx
import pytest
from hypothesis import given, strategies as st

from polyforge.confinement import is_confined
from polyforge.corpus import random_tree
from polyforge.errors import NotATree, NotDecodable
from polyforge.gadgets import gadget_A, gadget_B
from polyforge.incidence import PartialPolygon, girth, is_partial_polygon
from polyforge.tree_codec import (
    Tree,
    block_owner,
    canonical_form,
    decode,
    encode,
    reduction_check,
    trees_isomorphic,
)

trees = st.builds(random_tree, seed=st.integers(0, 2 ** 32), size=st.integers(1, 8))


def _nx(t):
    g = nx.Graph()
    g.add_nodes_from(t.vertices)
    g.add_edges_from(t.edges)
    return g


def test_tree_validation():
    with pytest.raises(NotATree):
        Tree([], [])
    with pytest.raises(NotATree):
        Tree([0, 0], [])
    with pytest.raises(NotATree):
        Tree([0, 1], [])
    with pytest.raises(NotATree):
        Tree([0, 1, 2], [(0, 1), (1, 0)])
    with pytest.raises(NotATree):
        Tree([0, 1], [(0, 0)])
    with pytest.raises(NotATree):
        Tree([0, 1, 2, 3], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotATree):
        Tree([0, 1], [(0, 5)])


def test_string_vertices():
    t = Tree(["a", "b", "c"], [("b", "a"), ("c", "b")])
    assert t.edges == (("a", "b"), ("b", "c"))


@given(trees, trees)
def test_canonical_form_agrees_with_networkx(t1, t2):
    assert trees_isomorphic(t1, t2) == nx.is_isomorphic(_nx(t1), _nx(t2))


@given(trees, st.randoms())
def test_canonical_form_is_label_invariant(t, rnd):
    perm = list(t.vertices)
    rnd.shuffle(perm)
    assert canonical_form(t.relabelled(dict(zip(t.vertices, perm)))) == canonical_form(t)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_single_edge_encodes_gadget_b(n):
    enc = encode(Tree([0, 1], [(0, 1)]), n)
    from polyforge.matching import is_isomorphic
    assert is_isomorphic(enc.base, gadget_B(n).B)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_base_is_a_confined_partial_polygon(n):
    enc = encode(random_tree(11, 7), n)
    assert is_partial_polygon(enc.base.structure, n)
    assert is_confined(enc.base)
    assert len(enc.vertex_blocks) == 7 and len(enc.edge_blocks) == 6


def test_growth_witness():
    enc = encode(random_tree(1, 4), 5)
    a, b, d = enc.growth_witness
    assert d >= 7
    assert encode(Tree([0]), 5).growth_witness is None


def test_block_owner_covers_the_base():
    enc = encode(random_tree(2, 5), 4)
    owner = block_owner(enc)
    assert set(owner) == set(enc.base.ids)


@given(trees, st.sampled_from([3, 4, 5]), st.sampled_from([0, 1]))
def test_roundtrip(t, n, rounds):
    enc = encode(t, n, rounds)
    assert girth(enc.last.structure) >= 2 * n
    assert trees_isomorphic(decode(enc), t)


def test_decode_accepts_plain_structures():
    enc = encode(random_tree(4, 4), 3, 1)
    assert trees_isomorphic(decode(enc.last.structure, 3), enc.tree)
    with pytest.raises(NotDecodable):
        decode(enc.last.structure)


def test_single_vertex_decodes():
    for n in (3, 4, 5, 6):
        assert len(decode(gadget_A(n))) == 1


def test_decode_without_copies_fails():
    from polyforge.corpus import cycle_polygon
    with pytest.raises(NotDecodable):
        decode(cycle_polygon(12, 5))


@given(trees, trees, st.sampled_from([3, 4, 5]))
def test_reduction_is_consistent(t1, t2, n):
    rep = reduction_check(t1, t2, n)
    assert rep.consistent


def test_reduction_compares_bases():
    t = random_tree(8, 5)
    u = t.relabelled({v: 4 - v for v in t.vertices})
    rep = reduction_check(t, u, 4, compare_bases=True)
    assert rep.inputs_isomorphic and rep.bases_isomorphic and rep.consistent
