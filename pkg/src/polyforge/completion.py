"""Free completion of partial n-gons, one simultaneous round at a time."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from polyforge import kernels
from polyforge.errors import DuplicateId, NotPartialPolygon
from polyforge.incidence import (
    IncidenceStructure,
    PartialPolygon,
    diameter,
    girth,
    label_round,
    round_label,
)

DIST_N_PLUS_1 = "dist_n_plus_1"
DIST_INFINITY = "dist_infinity"


class Degeneracy(enum.Enum):
    DEGENERATE = "degenerate"
    NON_DEGENERATE = "non_degenerate"
    UNKNOWN = "unknown"


@dataclass
class CompletionTrace:
    stages: list[PartialPolygon]
    processed_pairs: list[list[tuple[str, str, str]]] = field(default_factory=list)
    stabilized: bool = False
    truncated: bool = False

    @property
    def last(self) -> PartialPolygon:
        return self.stages[-1]

    @property
    def rounds(self) -> int:
        return len(self.stages) - 1


def _require_partial(P: PartialPolygon) -> None:
    if girth(P.structure) < 2 * P.n:
        raise NotPartialPolygon(f"girth {girth(P.structure)} < {2 * P.n}")


def pending_pairs(P: PartialPolygon) -> list[tuple[str, str, str]]:
    """Pairs that the next round would join, in lexicographic id order.

    Each entry is ``(a, b, kind)`` with ``a < b``; ``kind`` says whether the
    pair sits at distance n+1 or in different components.
    """
    s = P.structure
    n = P.n
    ids = s.ids
    indptr, indices = s.csr
    found = [(int(i), int(j), DIST_N_PLUS_1)
             for i, j in kernels.pairs_at_distance(indptr, indices, n + 1).tolist()]
    labels = s.component_labels.tolist()
    if len(set(labels)) > 1:
        codes = s.sort_codes.tolist()
        same_sort = n % 2 == 1
        for i in range(len(ids)):
            li, ci = labels[i], codes[i]
            for j in range(i + 1, len(ids)):
                if labels[j] != li and (codes[j] == ci) == same_sort:
                    found.append((i, j, DIST_INFINITY))
    found.sort()
    return [(ids[i], ids[j], kind) for i, j, kind in found]


def has_pending_pairs(P: PartialPolygon) -> bool:
    """Cheap test for a non-empty :func:`pending_pairs`."""
    s = P.structure
    if kernels.exists_pair_at_distance(*s.csr, P.n + 1):
        return True
    labels = s.component_labels.tolist()
    if len(set(labels)) < 2:
        return False
    kinds = {(lab, code) for lab, code in zip(labels, s.sort_codes.tolist())}
    same_sort = P.n % 2 == 1
    return any(la != lb and (ca == cb) == same_sort
               for la, ca in kinds for lb, cb in kinds)


def count_pending_pairs(P: PartialPolygon, limit: int | None = None) -> int:
    """Size of :func:`pending_pairs` without listing it.

    With ``limit`` the count may stop early at any value above the limit.
    """
    s = P.structure
    cap = -1 if limit is None else limit
    total = int(kernels.count_pairs_at_distance(*s.csr, P.n + 1, cap if cap >= 0 else 2**62))
    if limit is not None and total > limit:
        return total
    labels = s.component_labels.tolist()
    if len(set(labels)) > 1:
        sizes: dict[tuple, int] = {}
        for lab, code in zip(labels, s.sort_codes.tolist()):
            sizes[(lab, code)] = sizes.get((lab, code), 0) + 1
        same_sort = P.n % 2 == 1
        cross = 0
        for (la, ca), ka in sizes.items():
            for (lb, cb), kb in sizes.items():
                if la != lb and (ca == cb) == same_sort:
                    cross += ka * kb
        total += cross // 2
    return total


def _round_index(P: PartialPolygon) -> int:
    rounds = [label_round(t) for t in P.labels.values()]
    return max((r for r in rounds if r is not None), default=0) + 1


def _extend(P: PartialPolygon, pairs) -> PartialPolygon:
    s = P.structure
    n = P.n
    r = _round_index(P)
    tag = round_label(r)
    sorts = {x: s.sort(x) for x in s.ids}
    edges = s.incidences()
    labels = dict(P.labels)
    for k, (a, b, _) in enumerate(pairs):
        prev = a
        sort = sorts[a].other
        for pos in range(1, n - 1):
            z = f"z^{r}_{k}_{pos}"
            if z in sorts:
                raise DuplicateId(f"fresh id {z} already in use")
            sorts[z] = sort
            labels[z] = tag
            edges.append((prev, z))
            prev = z
            sort = sort.other
        edges.append((prev, b))
    return PartialPolygon(IncidenceStructure._trusted(sorts, edges), n, labels,
                          check=False)


def completion_round(P: PartialPolygon) -> PartialPolygon:
    """Join every pending pair of ``P`` by a fresh chain of n-2 elements."""
    _require_partial(P)
    pairs = pending_pairs(P)
    if not pairs:
        return P
    return _extend(P, pairs)


def free_completion(P: PartialPolygon, rounds: int, *, max_elements: int | None = None) -> CompletionTrace:
    """Run up to ``rounds`` completion rounds.

    The trace is marked stabilized as soon as a stage has nothing left to
    join; that stage is then the whole (finite) completion. With
    ``max_elements`` set, a round whose result would exceed that size is not
    run and the trace is marked truncated.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    _require_partial(P)
    trace = CompletionTrace(stages=[P])
    for _ in range(rounds):
        if max_elements is not None:
            room = max(max_elements - len(trace.last), 0) // max(P.n - 2, 1)
            if count_pending_pairs(trace.last, room) > room:
                trace.truncated = True
                return trace
        pairs = pending_pairs(trace.last)
        if not pairs:
            trace.stabilized = True
            return trace
        trace.processed_pairs.append(pairs)
        trace.stages.append(_extend(trace.last, pairs))
    trace.stabilized = not has_pending_pairs(trace.last)
    return trace


# -- degeneracy ---------------------------------------------------------------

def has_cycle_at_least(s: IncidenceStructure, length: int, node_budget: int = 2_000_000) -> bool | None:
    """Whether ``s`` has a simple cycle of at least ``length`` elements.

    Exhaustive path search; returns None if the budget runs out first.
    """
    adj = s._adj
    nodes = 0
    for start in range(len(adj)):
        # cycles are found from their smallest vertex only
        stack = [(start, iter(adj[start]))]
        on_path = {start}
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                nodes += 1
                if nodes > node_budget:
                    return None
                if w == start and len(stack) >= length:
                    return True
                if w > start and w not in on_path:
                    on_path.add(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                on_path.discard(v)
    return False


def _static_verdict(s: IncidenceStructure, n: int) -> Degeneracy | None:
    """Verdict readable off one connected stage, or None if undecided."""
    d = diameter(s)
    if d <= n:
        # nothing at distance n+1 and no separate components: F(A) = A
        return Degeneracy.DEGENERATE
    long_cycle = has_cycle_at_least(s, 2 * n + 2)
    if long_cycle is None:
        return Degeneracy.UNKNOWN
    if long_cycle or d >= n + 3:
        return Degeneracy.NON_DEGENERATE
    return None


def is_degenerate(P: PartialPolygon, budget: int = 3) -> Degeneracy:
    """Classify whether the free completion of ``P`` is finite.

    A connected stage is degenerate when its diameter is at most n, and
    non-degenerate when it has a cycle of at least 2n+2 elements or diameter
    at least n+3. Anything else (diameter n+1 or n+2 without long cycles,
    or several components) is completed one round at a time, for at most
    ``budget`` rounds, until a stage decides; otherwise the result is UNKNOWN.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    _require_partial(P)
    if len(P.structure) == 0:
        return Degeneracy.DEGENERATE
    stage = P
    for step in range(budget + 1):
        s = stage.structure
        if s.is_connected:
            verdict = _static_verdict(s, P.n)
            if verdict is not None:
                return verdict
        if step == budget:
            break
        pairs = pending_pairs(stage)
        if not pairs:
            return Degeneracy.DEGENERATE
        stage = _extend(stage, pairs)
    if not has_pending_pairs(stage):
        return Degeneracy.DEGENERATE
    return Degeneracy.UNKNOWN
