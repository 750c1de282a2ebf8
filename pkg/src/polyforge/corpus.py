"""Seeded random inputs: labelled trees and partial n-gons."""

from __future__ import annotations

import heapq
import random
from collections import deque

from polyforge.errors import BadSize
from polyforge.incidence import IncidenceStructure, PartialPolygon, Sort, _check_gonality
from polyforge.tree_codec import Tree


def prufer_decode(seq: list[int], size: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on 0..size-1 with Prüfer sequence ``seq``."""
    degree = [1] * size
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(size) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return sorted(edges)


def random_tree(seed: int, size: int) -> Tree:
    """Uniform labelled tree on 0..size-1, a function of ``(seed, size)``."""
    if not isinstance(size, int) or size < 1:
        raise BadSize(f"tree size must be a positive integer, got {size!r}")
    if size == 1:
        return Tree([0])
    rng = random.Random(f"tree:{seed}:{size}")
    seq = [rng.randrange(size) for _ in range(size - 2)]
    return Tree(range(size), prufer_decode(seq, size))


def _far(adj, a: int, b: int, bound: int) -> bool:
    # dist(a, b) >= bound
    seen = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if seen[x] + 1 >= bound:
            continue
        for y in adj[x]:
            if y not in seen:
                if y == b:
                    return False
                seen[y] = seen[x] + 1
                queue.append(y)
    return True


def random_partial_polygon(seed: int, n: int, size: int, density: float = 1.5) -> PartialPolygon:
    """Random partial n-gon on ``size`` elements.

    Elements alternate point/line; about ``density * size`` random incidences
    are proposed and each is kept only if it creates no cycle shorter than 2n.
    """
    _check_gonality(n)
    if size < 2:
        raise BadSize("need at least two elements")
    rng = random.Random(f"pp:{seed}:{n}:{size}:{density}")
    ids = [f"{'p' if k % 2 == 0 else 'l'}{k // 2}" for k in range(size)]
    points = [k for k in range(size) if k % 2 == 0]
    lines = [k for k in range(size) if k % 2 == 1]
    adj: list[set[int]] = [set() for _ in range(size)]
    for _ in range(int(density * size)):
        a, b = rng.choice(points), rng.choice(lines)
        if b in adj[a] or not _far(adj, a, b, 2 * n - 1):
            continue
        adj[a].add(b)
        adj[b].add(a)
    sorts = {ids[k]: Sort.POINT if k % 2 == 0 else Sort.LINE for k in range(size)}
    edges = [(ids[a], ids[b]) for a in range(size) for b in adj[a] if a < b]
    return PartialPolygon(IncidenceStructure._trusted(sorts, edges), n)


def cycle_polygon(length: int, n: int) -> PartialPolygon:
    """Ordinary cycle on ``length`` elements (even), as a partial n-gon."""
    if length % 2 or length < 2 * n:
        raise BadSize(f"cycle length must be even and >= {2 * n}")
    ids = [f"{'p' if k % 2 == 0 else 'l'}{k // 2}" for k in range(length)]
    sorts = {x: Sort.POINT if k % 2 == 0 else Sort.LINE for k, x in enumerate(ids)}
    edges = [(ids[k], ids[(k + 1) % length]) for k in range(length)]
    return PartialPolygon(IncidenceStructure._trusted(sorts, edges), n)
