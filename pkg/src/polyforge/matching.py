"""Induced, sort-preserving embeddings of one incidence structure into another.

The search is a backtracking matcher (in the spirit of VF2) run by
``kernels.find_embeddings``. This module plans the pattern side: a search
order that maximises the number of already-placed neighbours at each step,
the earlier-neighbour lists, and pattern distances from the first vertex,
which bound host distances from its image.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from polyforge import kernels
from polyforge.incidence import IncidenceStructure, as_structure


class _Plan:
    __slots__ = ("order", "prev_ptr", "prev_idx", "rootdist", "deg", "sorts")

    def __init__(self, s: IncidenceStructure, swap_sorts: bool = False):
        adj = s._adj
        n = len(adj)
        deg = [len(r) for r in adj]
        position = [-1] * n
        placed_nbrs = [0] * n
        order: list[int] = []
        remaining = set(range(n))
        while remaining:
            best = max(remaining, key=lambda v: (placed_nbrs[v], deg[v], -v))
            position[best] = len(order)
            order.append(best)
            remaining.discard(best)
            for w in adj[best]:
                placed_nbrs[w] += 1
        prev_ptr = [0]
        prev_idx: list[int] = []
        for t, v in enumerate(order):
            prev_idx.extend(sorted(position[w] for w in adj[v] if position[w] < t))
            prev_ptr.append(len(prev_idx))
        if n:
            indptr, indices = s.csr
            d = kernels.bfs(indptr, indices, order[0])
            rootdist = [int(d[v]) for v in order]
        else:
            rootdist = []
        sorts = s.sort_codes
        if swap_sorts:
            sorts = 1 - sorts
        self.order = np.asarray(order, dtype=np.int32)
        self.prev_ptr = np.asarray(prev_ptr, dtype=np.int32)
        self.prev_idx = np.asarray(prev_idx, dtype=np.int32)
        self.rootdist = np.asarray(rootdist, dtype=np.int32)
        self.deg = np.asarray(deg, dtype=np.int32)
        self.sorts = np.ascontiguousarray(sorts, dtype=np.int32)


def _raw_embeddings(pattern: IncidenceStructure, host: IncidenceStructure,
                    limit: int = -1, restrict: np.ndarray | None = None,
                    swap_sorts: bool = False) -> tuple[_Plan, np.ndarray]:
    plan = _Plan(pattern, swap_sorts)
    indptr, indices = host.csr
    rows = kernels.find_embeddings(
        plan.order, plan.sorts, plan.deg, plan.prev_ptr, plan.prev_idx,
        plan.rootdist, indptr, indices, host.sort_codes, limit, restrict)
    return plan, rows


def enumerate_copies(pattern, host, *, limit: int | None = None,
                     within: Iterable[str] | None = None,
                     allow_duality: bool = False) -> list[dict[str, str]]:
    """All induced, sort-preserving injections ``pattern -> host``.

    Each embedding is a dict from pattern ids to host ids; the list order is
    deterministic. ``within`` restricts images to a subset of host ids, and
    ``allow_duality`` additionally admits embeddings that swap points and lines.
    """
    pattern = as_structure(pattern)
    host = as_structure(host)
    if len(pattern) == 0:
        return [{}] if limit != 0 else []
    restrict = None
    if within is not None:
        restrict = np.zeros(len(host), dtype=np.uint8)
        for x in within:
            restrict[host.index(x)] = 1
    out: list[dict[str, str]] = []
    for swap in ((False, True) if allow_duality else (False,)):
        remaining = -1 if limit is None else limit - len(out)
        if remaining == 0:
            break
        plan, rows = _raw_embeddings(pattern, host, remaining, restrict, swap)
        pids = [pattern.ids[v] for v in plan.order.tolist()]
        hids = host.ids
        for row in rows.tolist():
            out.append({p: hids[h] for p, h in zip(pids, row)})
    return out


def group_by_image(embeddings: Iterable[dict[str, str]]) -> dict[frozenset, list[dict[str, str]]]:
    """Embeddings grouped by their image set, groups in first-seen order."""
    groups: dict[frozenset, list[dict[str, str]]] = {}
    for emb in embeddings:
        groups.setdefault(frozenset(emb.values()), []).append(emb)
    return groups


def copy_images(pattern, host, **kwargs) -> list[frozenset]:
    """Distinct image sets of induced copies of ``pattern`` in ``host``."""
    return sorted(group_by_image(enumerate_copies(pattern, host, **kwargs)),
                  key=lambda s: sorted(s))


def is_isomorphic(a, b) -> bool:
    """Sort-preserving isomorphism test between two incidence structures."""
    a, b = as_structure(a), as_structure(b)
    if len(a) != len(b) or a.num_incidences != b.num_incidences:
        return False
    if len(a.points) != len(b.points):
        return False
    return bool(enumerate_copies(a, b, limit=1))
