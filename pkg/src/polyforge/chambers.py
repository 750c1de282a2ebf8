"""Stagewise free construction of chamber systems over a Coxeter diagram.

Stage 0 is a single chamber mapped to the identity. Stage n+1 handles every
group element w of length n+1:

* if w has one neighbour v = w i in the n-ball, every chamber over v gets
  q-1 new chambers in its i-panel, all mapped to w;
* if w has two neighbours (via i and j), every {i, j}-residue over the coset
  w<i, j> is a ball of radius m-1 around its centre, and it is closed up into
  a thickness-q generalized m-gon by pairing its outward i- and j-panels.

Closing a residue is a search for a (q-1)-regular pairing that keeps the
residue's panel graph at girth >= 2m. An exact backtracking search runs first
with a node budget; if it fails, a greedy pass fills what it can and the
panels left thin are recorded as deficient.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from polyforge.coxeter import (
    INF,
    CoxeterDiagram,
    GroupElement,
    adjacent_in_ball,
    ball,
    coset_min_rep,
    has_spherical_rank3,
    sphere,
)
from polyforge.errors import (
    ConfigError,
    NoLargeLabel,
    SphericalRank3Residue,
    UnknownChamber,
)
from polyforge.incidence import IncidenceStructure, diameter, girth

SEARCH_BUDGET = 200_000


@dataclass
class BuildParams:
    diagram: CoxeterDiagram
    depth: int
    thickness: int = 3
    residue_seed: object = None
    residue_rounds: int = 0
    search_budget: int = SEARCH_BUDGET

    def validate(self) -> None:
        if self.thickness < 3:
            raise ConfigError(f"thickness must be >= 3, got {self.thickness}")
        if self.depth < 0:
            raise ConfigError(f"depth must be >= 0, got {self.depth}")
        check = has_spherical_rank3(self.diagram)
        if check:
            raise SphericalRank3Residue(f"spherical triple {check.witness}")
        if not any(m >= 3 for _, _, m in self.diagram.edges()):
            raise NoLargeLabel("diagram needs an edge labelled 3 or more (or infinity)")


class ChamberSystem:
    """Chambers with per-generator panel partitions and a type map to W."""

    def __init__(self, diagram: CoxeterDiagram, thickness: int):
        self.diagram = diagram
        self.thickness = thickness
        self.depth = 0
        self.chambers: list[str] = []
        self.rho: dict[str, GroupElement] = {}
        self.stage: dict[str, int] = {}
        self.panel_of: dict[str, dict[str, int]] = {g: {} for g in diagram.generators}
        self.members: dict[str, dict[int, list[str]]] = {g: {} for g in diagram.generators}
        self.deficient: set[tuple[str, int]] = set()
        self.residue_models: dict[str, dict] = {}
        self._next_panel = {g: 0 for g in diagram.generators}
        self._by_rho: dict[tuple, list[str]] = {}
        self._hopeless: set[tuple[int, int]] = set()

    # -- construction helpers ------------------------------------------------

    def _new_panel(self, g: str) -> int:
        pid = self._next_panel[g]
        self._next_panel[g] += 1
        self.members[g][pid] = []
        return pid

    def add_chamber(self, rho: GroupElement, stage: int, panels: dict[str, int] | None = None) -> str:
        c = f"c{len(self.chambers)}"
        self.chambers.append(c)
        self.rho[c] = rho
        self.stage[c] = stage
        self._by_rho.setdefault(rho.word, []).append(c)
        panels = panels or {}
        for g in self.diagram.generators:
            pid = panels.get(g)
            if pid is None:
                pid = self._new_panel(g)
            self.panel_of[g][c] = pid
            self.members[g][pid].append(c)
        return c

    def over(self, x: GroupElement) -> list[str]:
        return list(self._by_rho.get(x.word, ()))

    # -- queries ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.chambers)

    def __contains__(self, c) -> bool:
        return c in self.rho

    def panel(self, c: str, g: str) -> list[str]:
        if c not in self.rho:
            raise UnknownChamber(c)
        return list(self.members[g][self.panel_of[g][c]])

    def panels(self, g: str) -> list[list[str]]:
        return [list(m) for _, m in sorted(self.members[g].items()) if m]

    def due_stage(self, c: str) -> int:
        return self.rho[c].length + 1

    @property
    def frontier(self) -> frozenset:
        """Chambers with a thin panel: residues still open at the build depth."""
        q = self.thickness
        out = set()
        for g in self.diagram.generators:
            for c in self.chambers:
                if len(self.members[g][self.panel_of[g][c]]) < q:
                    out.add(c)
        return frozenset(out)

    def restricted(self, n: int) -> "ChamberSystem":
        """Chambers created at stage <= n, with panels cut down accordingly."""
        keep = [c for c in self.chambers if self.stage[c] <= n]
        return self._sub(keep)

    def _sub(self, keep: list[str]) -> "ChamberSystem":
        sub = ChamberSystem(self.diagram, self.thickness)
        sub.depth = self.depth
        keep_set = set(keep)
        sub.chambers = list(keep)
        sub.rho = {c: self.rho[c] for c in keep}
        sub.stage = {c: self.stage[c] for c in keep}
        for c in keep:
            sub._by_rho.setdefault(self.rho[c].word, []).append(c)
        for g in self.diagram.generators:
            sub.panel_of[g] = {c: self.panel_of[g][c] for c in keep}
            sub.members[g] = {}
            for c in keep:
                pid = self.panel_of[g][c]
                sub.members[g].setdefault(pid, []).append(c)
            sub._next_panel[g] = self._next_panel[g]
            for pid in sub.members[g]:
                sub.members[g][pid] = [c for c in self.members[g][pid] if c in keep_set]
        sub.deficient = {(g, p) for g, p in self.deficient if p in sub.members[g]}
        sub.residue_models = dict(self.residue_models)
        return sub


def _residue_chambers(cs: ChamberSystem, c: str, J) -> list[str]:
    seen = {c}
    order = [c]
    for x in order:
        for g in J:
            for y in cs.members[g][cs.panel_of[g][x]]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
    return order


def residue(cs: ChamberSystem, c: str, J) -> ChamberSystem:
    """The J-residue of chamber ``c`` as a sub-chamber-system."""
    if c not in cs.rho:
        raise UnknownChamber(c)
    J = [cs.diagram._check(str(g)) for g in J]
    keep = set(_residue_chambers(cs, c, J))
    return cs._sub([x for x in cs.chambers if x in keep])


# -- residue closing ---------------------------------------------------------------

def _panel_graph(cs: ChamberSystem, chambers, i: str, j: str):
    """Adjacency between i-panels and j-panels, one edge per chamber."""
    adj: dict[tuple, set] = {}
    for c in chambers:
        a = (i, cs.panel_of[i][c])
        b = (j, cs.panel_of[j][c])
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return adj


def _far_enough(adj, a, b, bound: int) -> bool:
    # True when dist(a, b) >= bound in the panel graph
    if a == b:
        return False
    seen = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        d = seen[x]
        if d + 1 >= bound:
            continue
        for y in adj.get(x, ()):
            if y not in seen:
                if y == b:
                    return False
                seen[y] = d + 1
                queue.append(y)
    return True


def _close_residue(adj, outward_i, outward_j, q: int, m: int, budget: int):
    """Pair outward panels so every panel gains q-1 chambers and girth stays >= 2m.

    Returns ``(pairs, exact)``. A zero budget skips the exact search.
    """
    slots = [a for a in outward_i for _ in range(q - 1)]
    need = len(slots)
    cap = {b: q - 1 for b in outward_j}
    bound = 2 * m - 1

    def add(a, b):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    def remove(a, b):
        adj[a].discard(b)
        adj[b].discard(a)

    if budget > 0 and len(outward_j) * (q - 1) == need:
        # exact backtracking over slots; partners of one panel increase strictly
        chosen: list = []
        stack = [0]
        nodes = 0
        while stack and len(chosen) < need:
            t = len(chosen)
            a = slots[t]
            start = stack[-1]
            lo = 0
            if t > 0 and slots[t - 1] == a:
                lo = outward_j.index(chosen[-1][1]) + 1
            picked = None
            for k in range(max(start, lo), len(outward_j)):
                nodes += 1
                b = outward_j[k]
                if cap[b] > 0 and _far_enough(adj, a, b, bound):
                    picked = k
                    break
            if nodes > budget:
                break
            if picked is None:
                stack.pop()
                if not chosen:
                    break
                a0, b0 = chosen.pop()
                remove(a0, b0)
                cap[b0] += 1
                stack[-1] = outward_j.index(b0) + 1
                continue
            b = outward_j[picked]
            chosen.append((a, b))
            add(a, b)
            cap[b] -= 1
            stack[-1] = picked
            stack.append(0)
        if len(chosen) == need:
            return chosen, True
        for a0, b0 in chosen:
            remove(a0, b0)
        cap = {b: q - 1 for b in outward_j}

    pairs = []
    for a in outward_i:
        got = 0
        for b in outward_j:
            if got == q - 1:
                break
            if cap[b] > 0 and b not in adj.get(a, ()) and _far_enough(adj, a, b, bound):
                pairs.append((a, b))
                add(a, b)
                cap[b] -= 1
                got += 1
    return pairs, False


# -- build ---------------------------------------------------------------------

def _residue_models(params: BuildParams) -> dict[str, dict]:
    from polyforge.tree_codec import Tree, canonical_form, decode, encode

    tree = params.residue_seed if params.residue_seed is not None else Tree([0, 1], [(0, 1)])
    out = {}
    for i, j, m in params.diagram.edges():
        key = f"{i},{j}"
        if m == INF:
            out[key] = {"m": "inf", "model": "tree", "tree": canonical_form(tree)}
        elif m >= 3:
            enc = encode(tree, int(m), params.residue_rounds)
            out[key] = {"m": int(m), "model": "polygon", "tree": canonical_form(tree),
                        "base_elements": len(enc.base), "stage_elements": len(enc.last),
                        "decoded": canonical_form(decode(enc.last))}
    return out


def build(params: BuildParams) -> ChamberSystem:
    """Run stages 1..depth of the free construction."""
    params.validate()
    D = params.diagram
    q = params.thickness
    cs = ChamberSystem(D, q)
    cs.residue_models = _residue_models(params)
    cs.add_chamber(GroupElement(()), 0)
    for n in range(params.depth):
        for w in sphere(D, n + 1):
            nbrs = adjacent_in_ball(D, w, n)
            if len(nbrs) == 1:
                v, i = nbrs[0]
                for u in cs.over(v):
                    pid = cs.panel_of[i][u]
                    for _ in range(q - 1):
                        cs.add_chamber(w, n + 1, {i: pid})
            else:
                (_, i), (_, j) = nbrs
                _case_two(cs, params, w, i, j, n)
        cs.depth = n + 1
    return cs


def _case_two(cs: ChamberSystem, params: BuildParams, w: GroupElement, i: str, j: str, n: int):
    D = cs.diagram
    q = cs.thickness
    m = D.m(i, j)
    centre = coset_min_rep(D, w, (i, j))
    wi = GroupElement(D.times(w.word, i))
    wj = GroupElement(D.times(w.word, j))
    for z in cs.over(centre):
        chambers = _residue_chambers(cs, z, (i, j))
        outward_i = sorted({(i, cs.panel_of[i][c]) for c in chambers if cs.rho[c] == wi},
                           key=lambda p: p[1])
        outward_j = sorted({(j, cs.panel_of[j][c]) for c in chambers if cs.rho[c] == wj},
                           key=lambda p: p[1])
        adj = _panel_graph(cs, chambers, i, j)
        # all residues of one type are isomorphic balls: once the exact search
        # has failed for (m, q) it is not retried
        budget = 0 if (int(m), q) in cs._hopeless else params.search_budget
        pairs, exact = _close_residue(adj, outward_i, outward_j, q, int(m), budget)
        if not exact:
            cs._hopeless.add((int(m), q))
        for (_, pa), (_, pb) in pairs:
            cs.add_chamber(w, n + 1, {i: pa, j: pb})
        for g, pid in outward_i + outward_j:
            if len(cs.members[g][pid]) < q:
                cs.deficient.add((g, pid))


# -- conditions ----------------------------------------------------------------

@dataclass
class ConditionReport:
    stage: int
    image_ok: bool = True
    adjacency_ok: bool = True
    dichotomy_ok: bool = True
    denuded_ok: bool = True
    residues_checked: int = 0
    residues_skipped: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.image_ok and self.adjacency_ok and self.dichotomy_ok and self.denuded_ok


def _shorter(D: CoxeterDiagram, x: GroupElement, g: str) -> bool:
    return g in D.descents(x.word)


def check_conditions(cs: ChamberSystem, params: BuildParams | None = None, n: int | None = None) -> ConditionReport:
    """Verify the stage invariants on the chambers created up to stage ``n``."""
    D = cs.diagram if params is None else params.diagram
    q = cs.thickness if params is None else params.thickness
    n = cs.depth if n is None else n
    rep = ConditionReport(stage=n)
    if n > cs.depth:
        rep.image_ok = False
        rep.violations.append(f"system only built to stage {cs.depth}")
        return rep
    sub = cs.restricted(n)
    W_n = {x.word for x in ball(D, n)}

    # (a) image of rho is exactly the n-ball
    image = {x.word for x in sub.rho.values()}
    if image != W_n:
        rep.image_ok = False
        extra = sorted(image - W_n, key=D.word_key)[:3]
        missing = sorted(W_n - image, key=D.word_key)[:3]
        rep.violations.append(f"(a) image mismatch: extra {extra}, missing {missing}")

    # panels that should be thick by stage n but are not
    bad_panels = set()
    for g in D.generators:
        for pid, mem in sub.members[g].items():
            if len(mem) < q and any(sub.rho[c].length + 1 <= n and not _shorter(D, sub.rho[c], g)
                                    for c in mem):
                bad_panels.add((g, pid))
    unexplained = {p for p in bad_panels if p not in cs.deficient}
    if unexplained:
        rep.adjacency_ok = False
        rep.violations.append(f"(b) {len(unexplained)} thin panels without a deficiency record")

    # (b) every panel is mapped onto {x, x g} with one chamber over the shorter end
    for g in D.generators:
        for pid, mem in sorted(sub.members[g].items()):
            if len(mem) > q:
                rep.adjacency_ok = False
                rep.violations.append(f"(b) {g}-panel {pid} has {len(mem)} > {q} chambers")
            if len(mem) < 2:
                continue
            words = {sub.rho[c].word for c in mem}
            x = min((sub.rho[c] for c in mem), key=lambda e: e.length)
            pair = {x.word, D.times(x.word, g)}
            low = [c for c in mem if sub.rho[c] == x]
            if words != pair or len(low) != 1:
                rep.adjacency_ok = False
                rep.violations.append(f"(b) {g}-panel {pid} maps to {sorted(words)}")
        # reverse lifting: the panel reaches rho(c) g whenever it lies in the ball
        for c in sub.chambers:
            pid = sub.panel_of[g][c]
            if (g, pid) in cs.deficient:
                continue
            target = D.times(sub.rho[c].word, g)
            if target in W_n and not any(sub.rho[d].word == target for d in sub.members[g][pid]):
                rep.adjacency_ok = False
                rep.violations.append(f"(b) {g}-panel of {c} misses {target}")
                break

    # case dichotomy
    for x in ball(D, n):
        if x.length == 0:
            continue
        k = len(adjacent_in_ball(D, x, x.length - 1))
        if not 1 <= k <= 2:
            rep.dichotomy_ok = False
            rep.violations.append(f"{x} has {k} neighbours in the smaller ball")

    # (c) rank-2 residues are denuded polygons of the predicted depth
    for i, j in itertools.combinations(D.generators, 2):
        m = D.m(i, j)
        seen: set[str] = set()
        for c in sub.chambers:
            if c in seen:
                continue
            chambers = _residue_chambers(sub, c, (i, j))
            seen.update(chambers)
            if any((g, sub.panel_of[g][x]) in cs.deficient
                   for x in chambers for g in (i, j)):
                rep.residues_skipped += 1
                continue
            rep.residues_checked += 1
            problem = _check_residue(sub, D, chambers, i, j, m, n, q)
            if problem:
                rep.denuded_ok = False
                rep.violations.append(f"(c) {{{i},{j}}}-residue of {c}: {problem}")
    return rep


def _check_residue(cs: ChamberSystem, D, chambers, i, j, m, n, q) -> str | None:
    centre = coset_min_rep(D, cs.rho[chambers[0]], (i, j))
    z = [c for c in chambers if cs.rho[c] == centre]
    if len(z) != 1:
        return f"{len(z)} chambers over the projection {centre}"
    z = z[0]
    graph = IncidenceStructure._trusted(
        {**{f"{i}#{p}": _POINT for p in {cs.panel_of[i][c] for c in chambers}},
         **{f"{j}#{p}": _LINE for p in {cs.panel_of[j][c] for c in chambers}}},
        [(f"{i}#{cs.panel_of[i][c]}", f"{j}#{cs.panel_of[j][c]}") for c in chambers])
    if graph.num_incidences != len(chambers):
        return "two chambers share both panels"
    if m != INF and girth(graph) < 2 * m:
        return f"panel graph has girth {girth(graph)} < {2 * m}"
    k = INF if m == INF else centre.length + m - n
    if k >= 1:
        radius = n - centre.length
        dist = {z: 0}
        order = [z]
        for x in order:
            for g in (i, j):
                for y in cs.members[g][cs.panel_of[g][x]]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        order.append(y)
        if max(dist.values()) > radius:
            return f"gallery radius {max(dist.values())} > {radius}"
        expected = 1 + 2 * sum((q - 1) ** d for d in range(1, radius + 1))
        if len(chambers) != expected:
            return f"{len(chambers)} chambers, expected {expected} for a radius-{radius} ball"
        if graph.num_incidences != len(graph) - 1:
            return "panel graph has a cycle"
        return None
    if girth(graph) != 2 * m or diameter(graph) != m:
        return f"not a generalized {m}-gon (girth {girth(graph)}, diameter {diameter(graph)})"
    if any(len(graph.neighbours(x)) != q for x in graph.ids):
        return "panel sizes differ from the thickness"
    return None


from polyforge.incidence import Sort as _Sort  # noqa: E402

_POINT = _Sort.POINT
_LINE = _Sort.LINE
