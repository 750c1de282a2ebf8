"""Encode finite trees as partial n-gons and decode them back.

Each tree vertex becomes a disjoint copy of ``gadget_A(n)``; each edge adds
the connector of ``gadget_B(n)`` between the two copies. Decoding finds the
copies of A inside the confined core of the structure and reads an edge off
every connector component that, together with its two copies, forms a copy
of B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from polyforge.completion import CompletionTrace, free_completion
from polyforge.confinement import confined_core
from polyforge.errors import NotATree, NotDecodable
from polyforge.gadgets import _a_structure, connector_edges, gadget_A, gadget_B
from polyforge.incidence import (
    IncidenceStructure,
    PartialPolygon,
    Sort,
    _check_gonality,
    gadget_label,
)
from polyforge.matching import enumerate_copies, group_by_image, is_isomorphic


def _vkey(v):
    return (type(v).__name__, v)


class Tree:
    """A finite tree on hashable vertex ids (ints or strings)."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple] = ()):
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise NotATree("duplicate vertex")
        if not vertices:
            raise NotATree("a tree needs at least one vertex")
        adj: dict = {v: set() for v in vertices}
        canon = set()
        for u, v in edges:
            if u not in adj or v not in adj:
                raise NotATree(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if u == v:
                raise NotATree(f"loop at {u!r}")
            key = tuple(sorted((u, v), key=_vkey))
            if key in canon:
                raise NotATree(f"repeated edge {key!r}")
            canon.add(key)
            adj[u].add(v)
            adj[v].add(u)
        if len(canon) != len(vertices) - 1:
            raise NotATree(f"{len(vertices)} vertices need {len(vertices) - 1} edges, got {len(canon)}")
        seen = {vertices[0]}
        todo = [vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(vertices):
            raise NotATree("graph is disconnected")
        self.vertices = tuple(sorted(vertices, key=_vkey))
        self.edges = tuple(sorted(canon, key=lambda e: (_vkey(e[0]), _vkey(e[1]))))
        self._adj = {v: tuple(sorted(adj[v], key=_vkey)) for v in self.vertices}

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Tree({len(self.vertices)} vertices)"

    def neighbours(self, v) -> tuple:
        return self._adj[v]

    def relabelled(self, mapping) -> "Tree":
        return Tree([mapping[v] for v in self.vertices],
                    [(mapping[u], mapping[v]) for u, v in self.edges])


# -- isomorphism --------------------------------------------------------------

def _centres(t: Tree) -> list:
    deg = {v: len(t.neighbours(v)) for v in t.vertices}
    layer = [v for v, d in deg.items() if d <= 1]
    left = len(deg)
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.neighbours(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def _rooted_form(t: Tree, root) -> str:
    parent = {root: None}
    order = [root]
    for v in order:
        for w in t.neighbours(v):
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    form = {}
    for v in reversed(order):
        kids = sorted(form[w] for w in t.neighbours(v) if w != parent[v])
        form[v] = "(" + "".join(kids) + ")"
    return form[root]


def canonical_form(t: Tree) -> str:
    """AHU string of the tree rooted at its centre (least over two centres)."""
    return min(_rooted_form(t, c) for c in _centres(t))


def trees_isomorphic(g1: Tree, g2: Tree) -> bool:
    return len(g1) == len(g2) and canonical_form(g1) == canonical_form(g2)


# -- encoding -----------------------------------------------------------------

@dataclass
class EncodedPolygon:
    tree: Tree
    n: int
    base: PartialPolygon
    vertex_blocks: dict
    edge_blocks: dict
    trace: CompletionTrace
    growth_witness: tuple | None = field(default=None)

    @property
    def last(self) -> PartialPolygon:
        return self.trace.last


def _block_prefix(i: int) -> str:
    return f"v{i}/"


def encode(G: Tree, n: int, rounds: int = 0) -> EncodedPolygon:
    """Glue one copy of A per vertex and one B-connector per edge, then complete."""
    _check_gonality(n)
    if not isinstance(G, Tree):
        raise NotATree("encode expects a Tree")
    a = _a_structure(n)
    index = {v: i for i, v in enumerate(G.vertices)}
    sorts: dict[str, Sort] = {}
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    vertex_blocks = {}
    for v, i in index.items():
        pre = _block_prefix(i)
        block = []
        for x in a.ids:
            sorts[pre + x] = a.sort(x)
            labels[pre + x] = gadget_label(x)
            block.append(pre + x)
        edges += [(pre + p, pre + q) for p, q in a.incidences()]
        vertex_blocks[v] = frozenset(block)
    edge_blocks = {}
    for u, v in G.edges:
        i, j = sorted((index[u], index[v]))
        epre = f"e{i}-{j}/"
        con_sorts, con_edges = connector_edges(
            n, lambda x, i=i: _block_prefix(i) + x, lambda x, j=j: _block_prefix(j) + x)
        rename = {c: epre + c for c in con_sorts}
        for c, srt in con_sorts.items():
            sorts[rename[c]] = srt
            labels[rename[c]] = gadget_label(c)
        edges += [(rename.get(p, p), rename.get(q, q)) for p, q in con_edges]
        edge_blocks[(u, v)] = frozenset(rename.values())
    structure = IncidenceStructure._trusted(sorts, edges)
    base = PartialPolygon(structure, n, labels)
    witness = None
    if G.edges:
        witness = _growth_witness(structure, a, n, G.edges[0], index)
    return EncodedPolygon(G, n, base, vertex_blocks, edge_blocks,
                          free_completion(base, rounds), witness)


def _growth_witness(s: IncidenceStructure, a: IncidenceStructure, n: int, edge, index):
    # two images of one A-element far enough apart to force completion growth
    i, j = (index[edge[0]], index[edge[1]])
    best = None
    for x in a.ids:
        d = s.distances_from(_block_prefix(i) + x)[_block_prefix(j) + x]
        if best is None or d > best[2]:
            best = (_block_prefix(i) + x, _block_prefix(j) + x, d)
    if best is None or best[2] < n + 2:
        return None
    return best


# -- decoding -----------------------------------------------------------------

def find_vertex_copies(P: PartialPolygon, n: int) -> list[frozenset]:
    """Image sets of copies of A inside the confined core, sorted by least id."""
    core = confined_core(P)
    groups = group_by_image(enumerate_copies(gadget_A(n), P, within=core))
    return sorted(groups, key=min)


def decode(P, n: int | None = None) -> Tree:
    """Recover the tree from an encoding or any of its completion stages.

    Vertices are numbered 0..k-1 in the order of their copies' least ids.
    """
    if isinstance(P, EncodedPolygon):
        P = P.last
    if not isinstance(P, PartialPolygon):
        if n is None:
            raise NotDecodable("gonality unknown")
        P = PartialPolygon(P, n, check=False)
    n = P.n if n is None else n
    _check_gonality(n)
    s = P.structure
    copies = find_vertex_copies(P, n)
    if not copies:
        raise NotDecodable("no copy of A")
    owner = {}
    for k, img in enumerate(copies):
        for x in img:
            if x in owner:
                raise NotDecodable("copies of A overlap")
            owner[x] = k
    core = confined_core(P)
    rest = sorted(core - owner.keys())
    rest_set = set(rest)
    b_shape = gadget_B(n).B.structure
    found_edges = set()
    seen = set()
    for x in rest:
        if x in seen:
            continue
        comp = [x]
        seen.add(x)
        for y in comp:
            for w in s.neighbours(y):
                if w in rest_set and w not in seen:
                    seen.add(w)
                    comp.append(w)
        touched = {owner[w] for y in comp for w in s.neighbours(y) if w in owner}
        if len(touched) != 2:
            continue
        u, v = sorted(touched)
        candidate = s.induced(set(comp) | copies[u] | copies[v])
        if is_isomorphic(candidate, b_shape):
            found_edges.add((u, v))
    try:
        return Tree(range(len(copies)), sorted(found_edges))
    except NotATree as exc:
        raise NotDecodable(f"decoded graph is not a tree: {exc}") from None


@dataclass
class ReductionReport:
    n: int
    rounds: int
    roundtrip_first: bool
    roundtrip_second: bool
    inputs_isomorphic: bool
    decoded_isomorphic: bool
    bases_isomorphic: bool | None

    @property
    def consistent(self) -> bool:
        return (self.roundtrip_first and self.roundtrip_second
                and self.inputs_isomorphic == self.decoded_isomorphic
                and self.bases_isomorphic in (None, self.inputs_isomorphic))


def reduction_check(G1: Tree, G2: Tree, n: int, rounds: int = 0, *,
                    compare_bases: bool = False) -> ReductionReport:
    """Encode both trees, decode both, and compare the isomorphism verdicts."""
    e1, e2 = encode(G1, n, rounds), encode(G2, n, rounds)
    d1, d2 = decode(e1.last), decode(e2.last)
    bases = None
    if compare_bases:
        bases = is_isomorphic(e1.base, e2.base)
    return ReductionReport(
        n=n, rounds=rounds,
        roundtrip_first=trees_isomorphic(d1, G1),
        roundtrip_second=trees_isomorphic(d2, G2),
        inputs_isomorphic=trees_isomorphic(G1, G2),
        decoded_isomorphic=trees_isomorphic(d1, d2),
        bases_isomorphic=bases,
    )


def block_owner(enc: EncodedPolygon) -> dict[str, object]:
    """Map from base element id to the tree vertex or edge that created it."""
    out = {}
    for v, block in enc.vertex_blocks.items():
        out.update(dict.fromkeys(block, v))
    for e, block in enc.edge_blocks.items():
        out.update(dict.fromkeys(block, e))
    return out
