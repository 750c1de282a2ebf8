"""The rigid configurations A and B used to encode trees into n-gons.

``gadget_A(n)`` is a finite confined partial n-gon; ``gadget_B(n)`` glues two
disjoint copies of it with a short connector so that the result is still
confined, is non-degenerate, and contains no third copy of A.

Element ids follow the coordinate names of the drawings: ``a_1`` ... for the
two small cases, and ``a_k^i`` (chain k, position i), ``b_k^i``, ``c_i`` for
n >= 5. In B the two copies are distinguished by ``a_i``/``b_i`` for n = 3, 4
and by the prefixes ``1:``/``2:`` for n >= 5; connectors are ``p``, ``l``,
``c`` and ``d_i`` respectively.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from polyforge.errors import NotAGadget
from polyforge.incidence import (
    IncidenceStructure,
    PartialPolygon,
    Sort,
    _check_gonality,
    gadget_label,
)
from polyforge.matching import enumerate_copies, group_by_image  # noqa: F401  (re-export)

HEAWOOD_CHORDS = ((1, 10), (2, 7), (3, 12), (4, 9), (5, 14), (6, 11), (8, 13))

TUTTE_COXETER_CHORDS = (
    (1, 18), (2, 23), (3, 10), (4, 27), (5, 14), (6, 19), (7, 24), (8, 29),
    (9, 16), (11, 20), (12, 25), (13, 30), (15, 22), (17, 26), (21, 28),
)


class _Builder:
    """Accumulates sorted elements and incidences, checking bipartiteness late."""

    def __init__(self):
        self.sorts: dict[str, Sort] = {}
        self.edges: list[tuple[str, str]] = []

    def add(self, x: str, sort: Sort) -> str:
        if x in self.sorts:
            raise ValueError(f"duplicate element {x}")
        self.sorts[x] = sort
        return x

    def chain(self, ids: list[str], first: Sort) -> None:
        sort = first
        for x in ids:
            self.add(x, sort)
            sort = sort.other
        self.edges.extend(zip(ids, ids[1:]))

    def join(self, a: str, b: str) -> None:
        self.edges.append((a, b))

    def build(self) -> IncidenceStructure:
        points = [x for x, s in self.sorts.items() if s is Sort.POINT]
        lines = [x for x, s in self.sorts.items() if s is Sort.LINE]
        return IncidenceStructure(points, lines, sorted(set(self.edges)))


def _cycle_with_chords(size: int, chords) -> _Builder:
    bld = _Builder()
    for i in range(1, size + 1):
        bld.add(f"a_{i}", Sort.POINT if i % 2 == 0 else Sort.LINE)
    for i in range(1, size + 1):
        bld.join(f"a_{i}", f"a_{i % size + 1}")
    for i, j in chords:
        bld.join(f"a_{i}", f"a_{j}")
    return bld


def _chain_ids(letter: str, k: int, length: int) -> list[str]:
    return [f"{letter}_{k}^{i}" for i in range(1, length + 1)]


def _odd_builder(n: int) -> _Builder:
    bld = _Builder()
    for k in range(1, 8):
        bld.chain(_chain_ids("a", k, n - 2), Sort.POINT if k % 2 else Sort.LINE)
    for k in range(1, 7):
        bld.join(f"a_{k}^{n - 2}", f"a_{k + 1}^1")
    for k in range(1, 5):
        bld.chain(_chain_ids("b", k, n - 3), Sort.LINE if k % 2 else Sort.POINT)
        bld.join(f"a_{k}^1", f"b_{k}^1")
        bld.join(f"a_{k + 3}^{n - 2}", f"b_{k}^{n - 3}")
    c = [f"c_{i}" for i in range(1, n - 3)]
    bld.chain(c, Sort.LINE)
    bld.join("a_1^1", c[0])
    bld.join(f"a_7^{n - 2}", c[-1])
    return bld


def _even_builder(n: int) -> _Builder:
    bld = _Builder()
    for k in range(1, 6):
        bld.chain(_chain_ids("a", k, n - 2), Sort.POINT)
    for k in range(1, 5):
        bld.join(f"a_{k}^{n - 2}", f"a_{k + 1}^1")
    for k in range(1, 4):
        bld.chain(_chain_ids("b", k, n - 3), Sort.LINE)
        bld.join(f"a_{k}^1", f"b_{k}^1")
        bld.join(f"a_{k + 2}^{n - 3}", f"b_{k}^{n - 3}")
    c = [f"c_{i}" for i in range(1, n - 3)]
    bld.chain(c, Sort.LINE)
    bld.join("a_1^1", c[0])
    bld.join(f"a_5^{n - 2}", c[-1])
    return bld


def _a_structure(n: int) -> IncidenceStructure:
    if n == 3:
        return _cycle_with_chords(14, HEAWOOD_CHORDS).build()
    if n == 4:
        return _cycle_with_chords(30, TUTTE_COXETER_CHORDS).build()
    return (_odd_builder(n) if n % 2 else _even_builder(n)).build()


def gadget_A(n: int) -> PartialPolygon:
    """The confined partial n-gon A, with coordinate names as ids."""
    _check_gonality(n)
    s = _a_structure(n)
    return PartialPolygon(s, n, {x: gadget_label(x) for x in s.ids})


@dataclass
class GadgetPair:
    n: int
    A: PartialPolygon
    B: PartialPolygon
    embedding_A1: dict[str, str]
    embedding_A2: dict[str, str]
    connectors: list[str] = field(default_factory=list)

    @property
    def image1(self) -> frozenset:
        return frozenset(self.embedding_A1.values())

    @property
    def image2(self) -> frozenset:
        return frozenset(self.embedding_A2.values())


def copy_names(n: int) -> tuple:
    """Functions renaming an A-id into its first and second copy in B."""
    if n in (3, 4):
        return (lambda x: x), (lambda x: "b" + x[1:])
    return (lambda x: "1:" + x), (lambda x: "2:" + x)


def connector_edges(n: int, first, second) -> tuple[dict[str, Sort], list[tuple[str, str]]]:
    """Connector elements of B and their incidences.

    ``first``/``second`` map A-ids to the ids of the two copies, so the same
    shape serves both ``gadget_B`` and the tree encoder.
    """
    sorts: dict[str, Sort] = {}
    edges: list[tuple[str, str]] = []
    if n == 3:
        sorts = {"p": Sort.POINT, "l": Sort.LINE}
        edges = [("p", first("a_1")), ("p", second("a_1")), ("p", "l"),
                 (first("a_4"), "l"), (second("a_4"), "l")]
    elif n == 4:
        sorts = {"c": Sort.POINT}
        edges = [("c", first("a_1")), ("c", second("a_1"))]
    else:
        d = [f"d_{i}" for i in range(1, n - 3)]
        sort = Sort.POINT
        for x in d:
            sorts[x] = sort
            sort = sort.other
        edges = list(zip(d, d[1:]))
        if n % 2:
            edges += [(d[0], first(f"c_{n - 4}")), (d[-1], second(f"c_{n - 4}"))]
        else:
            edges += [(d[0], first("c_1")), (d[-1], second(f"c_{n - 4}"))]
    return sorts, edges


def gadget_B(n: int) -> GadgetPair:
    """Two disjoint copies of A joined by the connector for this n."""
    _check_gonality(n)
    a = _a_structure(n)
    first, second = copy_names(n)
    sorts: dict[str, Sort] = {}
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    for rename in (first, second):
        for x in a.ids:
            sorts[rename(x)] = a.sort(x)
            labels[rename(x)] = gadget_label(x)
        edges += [(rename(p), rename(q)) for p, q in a.incidences()]
    con_sorts, con_edges = connector_edges(n, first, second)
    sorts.update(con_sorts)
    edges += con_edges
    for x in con_sorts:
        labels[x] = gadget_label(x)
    b = IncidenceStructure([x for x, s in sorts.items() if s is Sort.POINT],
                           [x for x, s in sorts.items() if s is Sort.LINE], edges)
    return GadgetPair(
        n=n,
        A=PartialPolygon(a, n, {x: gadget_label(x) for x in a.ids}),
        B=PartialPolygon(b, n, labels),
        embedding_A1={x: first(x) for x in a.ids},
        embedding_A2={x: second(x) for x in a.ids},
        connectors=sorted(con_sorts),
    )


# -- cycle census -------------------------------------------------------------

def _chain_kind(x: str) -> str:
    if x.startswith("c_"):
        return "c"
    if x.startswith("b_"):
        return x.split("^", 1)[0]
    return "a"


def _branch_multigraph(s: IncidenceStructure):
    """Contract maximal runs of valency-2 elements into labelled edges.

    Returns ``(branch, edges)`` where each edge is ``(u, v, length, kinds)``:
    ``length`` counts incidences along the run and ``kinds`` the distinguished
    chains it passes through.
    """
    deg = {x: len(s.neighbours(x)) for x in s.ids}
    branch = sorted(x for x in s.ids if deg[x] >= 3)
    bset = set(branch)
    edges = []
    seen_runs = set()
    for u in branch:
        for w in s.neighbours(u):
            prev, cur, length = u, w, 1
            interior = []
            while cur not in bset:
                interior.append(cur)
                nxt = [y for y in s.neighbours(cur) if y != prev]
                if len(nxt) != 1:
                    raise NotAGadget(f"element {cur} is a dead end")
                prev, cur = cur, nxt[0]
                length += 1
            key = (min(u, cur), max(u, cur), tuple(sorted(interior)) or (min(u, w), max(u, w)))
            if key in seen_runs:
                continue
            seen_runs.add(key)
            kinds = frozenset(_chain_kind(x) for x in interior) - {"a"}
            edges.append((u, cur, length, kinds))
    return branch, edges


def _simple_cycles(branch, edges):
    """Edge-index sets of all simple cycles of a small multigraph."""
    incident = defaultdict(list)
    for e, (u, v, _, _) in enumerate(edges):
        incident[u].append((e, v))
        incident[v].append((e, u))
    rank = {x: i for i, x in enumerate(branch)}
    found = set()

    def walk(start, here, visited, used):
        for e, nxt in incident[here]:
            if e in used:
                continue
            if nxt == start:
                found.add(frozenset(used | {e}))
                continue
            if nxt in visited or rank[nxt] < rank[start]:
                continue
            visited.add(nxt)
            walk(start, nxt, visited, used | {e})
            visited.discard(nxt)

    for s in branch:
        walk(s, s, {s}, frozenset())
    return found


def census_class(uses_c: bool, b_chains: int) -> str:
    return f"{'c' if uses_c else 'no-c'}+{b_chains}b"


CENSUS_FORMULAS = {
    "odd": {
        census_class(True, 0): (8, -18),
        census_class(True, 1): (5, -11),
        census_class(True, 2): (4, -10),
        census_class(False, 2): (4, -8),
        census_class(False, 1): (5, -11),
    },
    "even": {
        census_class(True, 0): (6, -14),
        census_class(True, 1): (4, -8),
        census_class(True, 2): (4, -10),
        census_class(False, 2): (4, -8),
        census_class(False, 1): (4, -10),
    },
}


def expected_census(n: int) -> dict[str, int]:
    """Closed-form class minima for gadget_A(n), n >= 5."""
    table = CENSUS_FORMULAS["odd" if n % 2 else "even"]
    return {k: a * n + b for k, (a, b) in table.items()}


def cycle_census(P, classes=None) -> dict[str, int]:
    """Minimum cycle length per class for a gadget_A(n) with n >= 5.

    A class is ``"c+kb"`` or ``"no-c+kb"``: whether the cycle runs through the
    c-chain and how many b-chains it traverses. ``classes`` optionally
    restricts the returned keys.
    """
    n = P.n if isinstance(P, PartialPolygon) else None
    s = P.structure if isinstance(P, PartialPolygon) else P
    if n is None or n < 5:
        raise NotAGadget("cycle census needs gadget_A(n) for n >= 5")
    expected_ids = set(_a_structure(n).ids)
    if set(s.ids) != expected_ids:
        raise NotAGadget(f"element set does not match gadget_A({n})")
    branch, edges = _branch_multigraph(s)
    best: dict[str, int] = {}
    for cyc in _simple_cycles(branch, edges):
        length = sum(edges[e][2] for e in cyc)
        kinds = set().union(*(edges[e][3] for e in cyc))
        key = census_class("c" in kinds, len(kinds - {"c"}))
        if key not in best or length < best[key]:
            best[key] = length
    if classes is not None:
        best = {k: v for k, v in best.items() if k in set(classes)}
    return dict(sorted(best.items()))
