import itertools

import pytest
from hypothesis import given, strategies as st

from polyforge.coxeter import (
    INF,
    CoxeterDiagram,
    GroupElement,
    adjacent_in_ball,
    ball,
    coset_min_rep,
    diagram_from_dict,
    diagram_to_dict,
    has_spherical_rank3,
    multiply,
    product,
    reduce_word,
    right_descents,
    triangle,
    words_equal,
)
from polyforge.errors import LengthMismatch, UnknownGenerator
from polyforge.oracles import (
    all_words,
    ball_sizes_by_matrices,
    dihedral_permutations,
    evaluate,
    free_product_ball_sizes,
    symmetric_permutations,
)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_dihedral_word_problem_matches_permutations(m):
    D = CoxeterDiagram("st", [("s", "t", m)])
    gens = dihedral_permutations(m)
    words = list(all_words("st", 2 * m))
    by_perm = {}
    for w in words:
        by_perm.setdefault(evaluate(w, gens), []).append(w)
    assert len(by_perm) == 2 * m if m > 2 else len(by_perm) == 4
    canon = {}
    for perm, ws in by_perm.items():
        forms = {reduce_word(D, w) for w in ws}
        assert len(forms) == 1
        canon[perm] = forms.pop()
    assert len(set(canon.values())) == len(canon)
    assert len(ball(D, m)) == 2 * m


def test_s4_word_problem():
    D = CoxeterDiagram("123", [("1", "2", 3), ("2", "3", 3)])
    gens = symmetric_permutations(4)
    classes = {}
    for w in all_words("123", 6):
        classes.setdefault(evaluate(w, gens), set()).add(reduce_word(D, w))
    assert len(classes) == 24
    assert all(len(v) == 1 for v in classes.values())
    assert len(ball(D, 6)) == 24
    assert max(x.length for x in ball(D, 10)) == 6


labels = st.sampled_from([2, 3, INF])


@given(st.integers(2, 4).flatmap(
    lambda r: st.tuples(st.just(r), st.lists(labels, min_size=r * (r - 1) // 2,
                                             max_size=r * (r - 1) // 2))))
def test_ball_sizes_match_reflection_matrices(data):
    r, ls = data
    gens = [str(k) for k in range(r)]
    D = CoxeterDiagram(gens, [(i, j, m) for (i, j), m in zip(itertools.combinations(gens, 2), ls)])
    radius = 4
    ours = [len(ball(D, k)) for k in range(radius + 1)]
    assert ours == ball_sizes_by_matrices(D, radius)


def test_affine_a2_ball():
    D = triangle(3, 3, 3)
    assert [len(ball(D, k)) for k in range(5)] == [1, 4, 10, 19, 31]


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_free_product_ball(rank):
    D = CoxeterDiagram([str(k) for k in range(rank)],
                       [(str(a), str(b), INF) for a, b in itertools.combinations(range(rank), 2)])
    assert [len(ball(D, k)) for k in range(5)] == free_product_ball_sizes(rank, 4)


def test_ball_is_sorted_and_reduced():
    D = triangle(4, 3, 5)
    B = ball(D, 4)
    keys = [(x.length, D.word_key(x.word)) for x in B]
    assert keys == sorted(keys)
    for x in B:
        assert reduce_word(D, x.word) == x
        assert len(x.word) == x.length


def test_words_equal_and_parse():
    D = triangle(3, 2, 3, names=("a", "b", "c"))
    assert words_equal(D, "aba", "bab")
    assert words_equal(D, "ac", "ca")
    assert not words_equal(D, "ab", "ba")
    assert words_equal(D, "aa", "")
    assert reduce_word(D, "e").length == 0
    assert reduce_word(D, "a b") == reduce_word(D, ["a", "b"]) == reduce_word(D, "a,b")
    with pytest.raises(UnknownGenerator):
        reduce_word(D, "ax")


def test_multiply_and_product():
    D = triangle(3, 3, 3)
    x = reduce_word(D, "12")
    assert multiply(D, x, "2") == reduce_word(D, "1")
    assert product(D, x, reduce_word(D, "21")) == reduce_word(D, "")
    assert right_descents(D, reduce_word(D, "121")) == {"1", "2"}


def _coset_brute(D, w, J):
    # every element of the finite dihedral group <J> is an alternating word of length <= m
    m = D.m(*J)
    alternating = [tuple(J[(k + s) % 2] for k in range(L)) for L in range(m + 1) for s in (0, 1)]
    elems = {reduce_word(D, w.word + u) for u in alternating}
    return min(elems, key=lambda x: (x.length, D.word_key(x.word)))


@pytest.mark.parametrize("labels", [(3, 3, 3), (4, 3, INF), (5, 2, 3), (6, 3, 3)])
def test_coset_min_rep_brute_force(labels):
    D = triangle(*labels)
    for w in ball(D, 4):
        for J in (("1", "2"), ("2", "3"), ("1", "3")):
            if D.m(*J) == INF:
                continue
            got = coset_min_rep(D, w, J)
            want = _coset_brute(D, w, J)
            assert got.length == want.length
            assert not (right_descents(D, got) & set(J))


def test_spherical_rank3():
    assert has_spherical_rank3(triangle(2, 3, 5)).witness == ("1", "2", "3")
    assert has_spherical_rank3(triangle(3, 3, 3)).found is False
    assert not has_spherical_rank3(triangle(2, 4, 4))
    assert has_spherical_rank3(triangle(2, 3, 4))
    D = CoxeterDiagram("abcd", [("a", "b", INF), ("c", "d", INF), ("a", "c", INF),
                                ("b", "d", INF), ("a", "d", 3)])
    # {b, c} commute and so do... only the triple (b, c, x) could be finite
    assert has_spherical_rank3(D).found == any(
        sum(0 if D.m(i, j) == INF else 1 / D.m(i, j) for i, j in itertools.combinations(t, 2)) > 1
        for t in itertools.combinations("abcd", 3))


@pytest.mark.parametrize("labels", [(3, 3, 3), (4, 4, 4), (3, INF, INF), (INF, INF, INF)])
def test_adjacent_in_ball(labels):
    D = triangle(*labels)
    for n in range(4):
        inner = set(ball(D, n))
        for w in ball(D, n + 1):
            if w.length != n + 1:
                continue
            adj = adjacent_in_ball(D, w, n)
            assert 1 <= len(adj) <= 2
            for x, g in adj:
                assert x in inner and multiply(D, x, g) == w
            brute = {g for g in D.generators if multiply(D, w, g) in inner}
            assert brute == {g for _, g in adj}


def test_adjacent_in_ball_length_check():
    D = triangle(3, 3, 3)
    with pytest.raises(LengthMismatch):
        adjacent_in_ball(D, reduce_word(D, "1"), 3)


def test_diagram_validation_and_roundtrip():
    with pytest.raises(ValueError):
        CoxeterDiagram("aa")
    with pytest.raises(ValueError):
        CoxeterDiagram("ab", [("a", "b", 1)])
    with pytest.raises(UnknownGenerator):
        CoxeterDiagram("ab", [("a", "z", 3)])
    D = triangle(4, INF, 3)
    data = diagram_to_dict(D)
    assert data["edges"] == [["1", "2", 4], ["1", "3", "inf"], ["2", "3", 3]]
    assert diagram_from_dict(data) == D
    assert D.m("1", "1") == 1


def test_group_element_str():
    assert str(GroupElement(())) == "e"
    assert str(GroupElement(("1", "2"))) == "12"
    assert str(GroupElement(("s1", "s2"))) == "s1 s2"
