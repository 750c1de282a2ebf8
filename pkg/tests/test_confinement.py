import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import bipartite_structures
from polyforge.completion import free_completion
from polyforge.confinement import (
    HyperfreeKind,
    confined_copies_in_completion,
    confined_core,
    hyperfree_tuples,
    is_confined,
)
from polyforge.corpus import cycle_polygon, random_partial_polygon
from polyforge.errors import PatternNotConfined
from polyforge.gadgets import gadget_A, gadget_B
from polyforge.incidence import PartialPolygon, build_structure, girth


def path(k, n):
    ids = [("p" if i % 2 == 0 else "l") + str(i) for i in range(k)]
    pts = ids[0::2]
    lns = ids[1::2]
    return PartialPolygon(build_structure(pts, lns, list(zip(ids, ids[1:]))), n)


def test_path_has_two_loose_ends():
    hs = hyperfree_tuples(path(5, 3))
    loose = [h for h in hs if h.kind is HyperfreeKind.LOOSE_END]
    assert [h.elements for h in loose] == [("l1",), ("p0",)] or \
        sorted(h.elements for h in loose) == [("p0",), ("p4",)]
    assert not is_confined(path(5, 3))


def test_cycle_is_all_clean_arcs_for_large_n():
    P = cycle_polygon(10, 5)
    hs = hyperfree_tuples(P)
    assert all(h.kind is HyperfreeKind.CLEAN_ARC for h in hs)
    # one arc of n-2 = 3 elements per starting position
    assert len(hs) == 10
    assert not is_confined(P)


def test_clean_arc_reports_outside_neighbours():
    P = cycle_polygon(10, 5)
    for h in hyperfree_tuples(P):
        a, b = h.endpoints
        assert a not in h.elements and b not in h.elements
        assert P.structure.incident(a, h.elements[0])
        assert P.structure.incident(b, h.elements[-1])


def test_triangle_cycle_is_confined_for_n3():
    # n - 2 = 1: every valency-2 element is its own clean arc
    assert not is_confined(cycle_polygon(6, 3))


@pytest.mark.parametrize("n", range(3, 11))
def test_gadgets_are_confined(n):
    pair = gadget_B(n)
    assert is_confined(pair.A)
    assert is_confined(pair.B)
    assert confined_core(pair.B) == frozenset(pair.B.ids)


def test_core_of_a_tree_is_empty():
    assert confined_core(path(7, 3)) == frozenset()


def _brute_core(P):
    ids = P.ids
    best = frozenset()
    for k in range(len(ids), 0, -1):
        for keep in itertools.combinations(ids, k):
            sub = P.induced(keep)
            if is_confined(sub):
                return frozenset(keep)
    return best


small = st.builds(random_partial_polygon, seed=st.integers(0, 10 ** 6), n=st.integers(3, 4),
                  size=st.integers(4, 11), density=st.sampled_from([1.0, 2.0, 3.0]))


@given(small)
def test_core_is_the_largest_confined_subset(P):
    core = confined_core(P)
    if core:
        assert is_confined(P.induced(core))
    want = _brute_core(P)
    assert len(core) == len(want)
    # the union of confined subsets is confined, so the maximum is unique
    assert core == want


@given(small)
def test_hyperfree_listing_agrees_with_valency_test(P):
    # is_confined raises on disagreement
    verdict = is_confined(P)
    assert verdict == (not hyperfree_tuples(P))


@given(small)
def test_hyperfree_tuples_are_deduplicated_and_sorted(P):
    arcs = [h for h in hyperfree_tuples(P) if h.kind is HyperfreeKind.CLEAN_ARC]
    assert len(set(arcs)) == len(arcs)
    assert [h.elements for h in arcs] == sorted(h.elements for h in arcs)
    for h in arcs:
        assert len(h.elements) == P.n - 2
        assert h.elements <= h.elements[::-1]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_copies_after_completion_stay_in_the_base(n):
    B = gadget_B(n).B
    found = confined_copies_in_completion(B, 1, gadget_A(n))
    assert found
    assert all(c.inside_base for c in found)
    assert {frozenset(c.embedding.values()) for c in found} == {
        frozenset(gadget_B(n).embedding_A1.values()), frozenset(gadget_B(n).embedding_A2.values())}


def test_unconfined_pattern_rejected():
    with pytest.raises(PatternNotConfined):
        confined_copies_in_completion(gadget_B(3).B, 1, path(4, 3))


def test_unconfined_pattern_can_escape_the_base():
    # a loose path does appear outside the base after completion: the
    # localization guarantee really needs confinement
    B = gadget_B(3).B
    trace = free_completion(B, 1)
    from polyforge.matching import enumerate_copies
    outside = [e for e in enumerate_copies(path(3, 3), trace.last, limit=5000)
               if not set(e.values()) <= set(B.ids)]
    assert outside
