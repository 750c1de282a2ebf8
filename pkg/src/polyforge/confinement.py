"""Loose ends, clean arcs and confinedness of finite partial n-gons."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from polyforge.completion import free_completion
from polyforge.errors import CharacterizationMismatch, PatternNotConfined
from polyforge.incidence import IncidenceStructure, PartialPolygon
from polyforge.matching import enumerate_copies


class HyperfreeKind(enum.Enum):
    LOOSE_END = "loose_end"
    CLEAN_ARC = "clean_arc"


@dataclass(frozen=True)
class HyperfreeTuple:
    kind: HyperfreeKind
    elements: tuple[str, ...]
    endpoints: tuple[str, str] | None = None


def _valency2_runs(s: IncidenceStructure) -> list[tuple[list[int], bool]]:
    """Maximal chains of valency-2 elements as ``(ordered indices, is_cycle)``."""
    adj = s._adj
    two = [len(r) == 2 for r in adj]
    seen = [False] * len(adj)
    runs = []
    for v in range(len(adj)):
        if not two[v] or seen[v]:
            continue
        # walk to one end of the run (or all the way round a cycle)
        start, prev = v, -1
        while True:
            nxt = [w for w in adj[start] if w != prev and two[w]]
            if not nxt or nxt[0] == v:
                break
            prev, start = start, nxt[0]
        run = [start]
        seen[start] = True
        prev = -1
        cur = start
        is_cycle = False
        while True:
            nxt = [w for w in adj[cur] if w != prev and two[w]]
            if not nxt:
                break
            if nxt[0] == start and len(run) > 2:
                is_cycle = True
                break
            if seen[nxt[0]]:
                break
            prev, cur = cur, nxt[0]
            run.append(cur)
            seen[cur] = True
        runs.append((run, is_cycle))
    return runs


def _outside(s: IncidenceStructure, v: int, inner: int | None) -> int:
    return next(w for w in s._adj[v] if w != inner)


def hyperfree_tuples(P) -> list[HyperfreeTuple]:
    """All loose ends and clean arcs, each arc reported in one orientation."""
    s = P.structure if isinstance(P, PartialPolygon) else P
    n = P.n
    ids = s.ids
    out = [HyperfreeTuple(HyperfreeKind.LOOSE_END, (ids[v],))
           for v in range(len(ids)) if len(s._adj[v]) <= 1]
    k = n - 2
    arcs = []
    for run, is_cycle in _valency2_runs(s):
        size = len(run)
        starts = range(size) if is_cycle else range(size - k + 1)
        for i in starts:
            window = [run[(i + j) % size] for j in range(k)]
            if k == 1:
                a, b = s._adj[window[0]]
            else:
                a = _outside(s, window[0], window[1])
                b = _outside(s, window[-1], window[-2])
            chain = tuple(ids[v] for v in window)
            ends = (ids[a], ids[b])
            if chain[::-1] < chain:
                chain, ends = chain[::-1], ends[::-1]
            arcs.append(HyperfreeTuple(HyperfreeKind.CLEAN_ARC, chain, ends))
    out.extend(sorted(set(arcs), key=lambda h: h.elements))
    return out


def _valency_characterization(s: IncidenceStructure, n: int) -> bool:
    # valencies >= 2 and no n-2 consecutive valency-2 elements
    adj = s._adj
    if any(len(r) < 2 for r in adj):
        return False
    two = {v for v in range(len(adj)) if len(adj[v]) == 2}
    # components of the valency-2 elements; a component of size >= n-2 is a
    # path or cycle that holds a full chain
    seen = set()
    for v in two:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        for u in comp:
            for w in adj[u]:
                if w in two and w not in seen:
                    seen.add(w)
                    comp.append(w)
        if len(comp) >= n - 2:
            return False
    return True


def is_confined(P) -> bool:
    """No hyperfree tuples, cross-checked against the valency characterization."""
    s = P.structure if isinstance(P, PartialPolygon) else P
    direct = not hyperfree_tuples(P)
    other = _valency_characterization(s, P.n)
    if direct != other:
        raise CharacterizationMismatch(
            f"hyperfree enumeration says {direct}, valency test says {other}")
    return direct


def confined_core(P: PartialPolygon) -> frozenset:
    """Largest subset whose induced structure is confined.

    Peels loose ends and whole runs of at least n-2 valency-2 elements until
    nothing changes; no element of a confined subset is ever peeled.
    """
    s = P.structure
    n = P.n
    alive = set(range(len(s)))
    adj = s._adj
    while True:
        deg = {v: sum(1 for w in adj[v] if w in alive) for v in alive}
        drop = {v for v, d in deg.items() if d <= 1}
        two = {v for v, d in deg.items() if d == 2}
        seen = set()
        for v in two:
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            for u in comp:
                for w in adj[u]:
                    if w in two and w not in seen:
                        seen.add(w)
                        comp.append(w)
            if len(comp) >= n - 2:
                drop.update(comp)
        if not drop:
            return frozenset(s.ids[v] for v in alive)
        alive -= drop


@dataclass(frozen=True)
class LocalizedCopy:
    embedding: dict
    inside_base: bool


def confined_copies_in_completion(A: PartialPolygon, rounds: int, pattern: PartialPolygon,
                                  *, limit: int | None = None) -> list[LocalizedCopy]:
    """Copies of a confined pattern in the completed stage, flagged by locality.

    Every copy should land inside ``A``; any that does not is returned with
    ``inside_base=False``.
    """
    if not is_confined(pattern):
        raise PatternNotConfined("pattern has hyperfree tuples")
    trace = free_completion(A, rounds)
    base = set(A.structure.ids)
    return [LocalizedCopy(emb, set(emb.values()) <= base)
            for emb in enumerate_copies(pattern, trace.last, limit=limit)]
