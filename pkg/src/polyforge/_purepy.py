"""Pure-Python graph kernels.

Reference implementation of the hot loops. ``polyforge.kernels`` picks the
compiled ``_fastgraph`` extension when it is importable and falls back to this
module otherwise. Both must return identical results, element for element.

All graphs are undirected and given in CSR form: ``indptr`` (length n+1) and
``indices`` with every row sorted ascending.
"""

from collections import deque

import numpy as np

BACKEND = "python"


def _rows(indptr, indices):
    ip = indptr.tolist()
    ix = indices.tolist()
    return [ix[ip[v]:ip[v + 1]] for v in range(len(ip) - 1)]


def bfs(indptr, indices, source, cutoff=-1):
    """Distances from ``source``; -1 for unreachable (or beyond ``cutoff``)."""
    rows = _rows(indptr, indices)
    dist = [-1] * len(rows)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == cutoff:
            continue
        for w in rows[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def components(indptr, indices):
    rows = _rows(indptr, indices)
    label = [-1] * len(rows)
    current = 0
    for s in range(len(rows)):
        if label[s] >= 0:
            continue
        label[s] = current
        stack = [s]
        while stack:
            u = stack.pop()
            for w in rows[u]:
                if label[w] < 0:
                    label[w] = current
                    stack.append(w)
        current += 1
    return np.asarray(label, dtype=np.int32)


def pairs_at_distance(indptr, indices, d):
    """All pairs ``(i, j)``, ``i < j``, at distance exactly ``d``, sorted."""
    rows = _rows(indptr, indices)
    n = len(rows)
    out = []
    dist = [-1] * n
    for s in range(n):
        touched = [s]
        dist[s] = 0
        frontier = [s]
        level = 0
        while frontier and level < d:
            nxt = []
            for u in frontier:
                for w in rows[u]:
                    if dist[w] < 0:
                        dist[w] = level + 1
                        nxt.append(w)
                        touched.append(w)
            frontier = nxt
            level += 1
        if level == d:
            out.extend((s, t) for t in sorted(frontier) if t > s)
        for v in touched:
            dist[v] = -1
    if not out:
        return np.zeros((0, 2), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)


def girth(indptr, indices):
    """Length of a shortest cycle, or -1 for forests."""
    rows = _rows(indptr, indices)
    n = len(rows)
    best = -1
    dist = [-1] * n
    parent = [-1] * n
    for s in range(n):
        touched = [s]
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best >= 0 and 2 * du + 1 >= best:
                break
            for w in rows[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    length = du + dist[w] + 1
                    if best < 0 or length < best:
                        best = length
        for v in touched:
            dist[v] = -1
            parent[v] = -1
    return best


def max_eccentricity(indptr, indices):
    """Diameter of a connected graph; -1 when disconnected."""
    rows = _rows(indptr, indices)
    n = len(rows)
    best = 0
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        seen = 1
        far = 0
        while queue:
            u = queue.popleft()
            du = dist[u]
            far = du
            for w in rows[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    seen += 1
                    queue.append(w)
        if seen < n:
            return -1
        best = max(best, far)
    return best


def find_embeddings(order, p_sort, p_deg, prev_ptr, prev_idx, p_rootdist,
                    h_indptr, h_indices, h_sort, limit=-1, restrict=None):
    """Enumerate induced, sort-preserving embeddings of a pattern into a host.

    The pattern arrives pre-planned: ``order`` lists pattern vertices in search
    order, and for search position ``t`` the slice
    ``prev_idx[prev_ptr[t]:prev_ptr[t+1]]`` holds the earlier positions adjacent
    to it. ``p_rootdist[t]`` bounds the host distance between the image of
    position ``t`` and the image of position 0 (-1 disables the bound).
    ``restrict`` is an optional boolean mask of admissible host vertices.

    Returns an ``(k, len(order))`` array; row ``r`` maps search position ``t``
    to its host vertex.
    """
    rows = _rows(h_indptr, h_indices)
    nh = len(rows)
    adj = [set(r) for r in rows]
    h_deg = [len(r) for r in rows]
    h_sort = h_sort.tolist()
    order = order.tolist()
    p_sort = p_sort.tolist()
    p_deg = p_deg.tolist()
    prev_ptr = prev_ptr.tolist()
    prev_idx = prev_idx.tolist()
    p_rootdist = p_rootdist.tolist()
    ok = [True] * nh if restrict is None else [bool(x) for x in restrict.tolist()]
    k = len(order)
    if k == 0:
        return np.zeros((0, 0), dtype=np.int32)
    prev = [prev_idx[prev_ptr[t]:prev_ptr[t + 1]] for t in range(k)]
    maxroot = max(p_rootdist)

    img = [-1] * k
    used = [False] * nh
    mcount = [0] * nh
    results = []

    def admissible(t, h):
        if used[h] or not ok[h]:
            return False
        if h_sort[h] != p_sort[order[t]] or h_deg[h] < p_deg[order[t]]:
            return False
        pr = prev[t]
        if mcount[h] != len(pr):
            return False
        for u in pr:
            if img[u] not in adj[h]:
                return False
        bound = p_rootdist[t]
        if bound >= 0 and t > 0 and (hdist[h] < 0 or hdist[h] > bound):
            return False
        return True

    def candidates(t):
        pr = prev[t]
        if not pr:
            return range(nh)
        anchor = pr[0]
        for u in pr[1:]:
            if h_deg[img[u]] < h_deg[img[anchor]]:
                anchor = u
        return rows[img[anchor]]

    def assign(t, h):
        img[t] = h
        used[h] = True
        for w in rows[h]:
            mcount[w] += 1

    def unassign(t):
        h = img[t]
        img[t] = -1
        used[h] = False
        for w in rows[h]:
            mcount[w] -= 1

    hdist = [-1] * nh
    stack = []
    for root in range(nh):
        if limit >= 0 and len(results) >= limit:
            break
        if not admissible(0, root):
            continue
        # host distances from the root image, bounded by the pattern's reach
        hdist = [-1] * nh
        hdist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if hdist[u] == maxroot:
                continue
            for w in rows[u]:
                if hdist[w] < 0:
                    hdist[w] = hdist[u] + 1
                    queue.append(w)
        assign(0, root)
        if k == 1:
            results.append(list(img))
            unassign(0)
            continue
        stack = [iter(candidates(1))]
        t = 1
        while t > 0:
            found = False
            for h in stack[-1]:
                if admissible(t, h):
                    found = True
                    break
            if not found:
                stack.pop()
                t -= 1
                if t > 0:
                    unassign(t)
                continue
            assign(t, h)
            if t == k - 1:
                results.append(list(img))
                unassign(t)
                if limit >= 0 and len(results) >= limit:
                    stack.clear()
                    t = 0
                    break
                continue
            t += 1
            stack.append(iter(candidates(t)))
        # unwind whatever is still mapped (early exit on limit)
        for pos in range(k - 1, 0, -1):
            if img[pos] >= 0:
                unassign(pos)
        unassign(0)
    if not results:
        return np.zeros((0, k), dtype=np.int32)
    return np.asarray(results, dtype=np.int32)


def exists_pair_at_distance(indptr, indices, d):
    """Whether some pair of vertices sits at distance exactly ``d``."""
    rows = _rows(indptr, indices)
    n = len(rows)
    dist = [-1] * n
    for s in range(n):
        touched = [s]
        dist[s] = 0
        frontier = [s]
        level = 0
        while frontier and level < d:
            nxt = []
            for u in frontier:
                for w in rows[u]:
                    if dist[w] < 0:
                        dist[w] = level + 1
                        nxt.append(w)
                        touched.append(w)
            frontier = nxt
            level += 1
        for v in touched:
            dist[v] = -1
        if level == d and frontier:
            return True
    return False


def count_pairs_at_distance(indptr, indices, d, limit):
    """Number of pairs at distance exactly ``d``; may stop early once above ``limit``."""
    rows = _rows(indptr, indices)
    n = len(rows)
    dist = [-1] * n
    total = 0
    for s in range(n):
        touched = [s]
        dist[s] = 0
        frontier = [s]
        level = 0
        while frontier and level < d:
            nxt = []
            for u in frontier:
                for w in rows[u]:
                    if dist[w] < 0:
                        dist[w] = level + 1
                        nxt.append(w)
                        touched.append(w)
            frontier = nxt
            level += 1
        if level == d:
            total += sum(1 for t in frontier if t > s)
        for v in touched:
            dist[v] = -1
        if total > limit:
            return total
    return total
