# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; same contracts as ``polyforge._purepy``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int32_t i32


def bfs(const i32[:] indptr, const i32[:] indices, int source, int cutoff=-1):
    cdef int n = indptr.shape[0] - 1
    cdef cnp.ndarray[i32, ndim=1] dist_arr = np.full(n, -1, dtype=np.int32)
    cdef i32[:] dist = dist_arr
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int head = 0, tail = 0, u, w, k, du
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du == cutoff:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du + 1
                queue[tail] = w
                tail += 1
    return dist_arr


def components(const i32[:] indptr, const i32[:] indices):
    cdef int n = indptr.shape[0] - 1
    cdef cnp.ndarray[i32, ndim=1] label_arr = np.full(n, -1, dtype=np.int32)
    cdef i32[:] label = label_arr
    cdef i32[:] stack = np.empty(max(n, 1), dtype=np.int32)
    cdef int top, s, u, w, k, current = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = current
        top = 0
        stack[top] = s
        top += 1
        while top > 0:
            top -= 1
            u = stack[top]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if label[w] < 0:
                    label[w] = current
                    stack[top] = w
                    top += 1
        current += 1
    return label_arr


def pairs_at_distance(const i32[:] indptr, const i32[:] indices, int d):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int s, head, tail, u, w, k, du, i, start
    out = []
    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        queue[tail] = s
        tail += 1
        start = -1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du == d:
                if start < 0:
                    start = head - 1
                continue
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        if start >= 0:
            level = sorted([queue[i] for i in range(start, tail) if queue[i] > s])
            out.extend([(s, t) for t in level])
        for i in range(tail):
            dist[queue[i]] = -1
    if not out:
        return np.zeros((0, 2), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)


def girth(const i32[:] indptr, const i32[:] indices):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] parent = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int best = -1, s, head, tail, u, w, k, du, length, i
    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if best >= 0 and 2 * du + 1 >= best:
                break
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    length = du + dist[w] + 1
                    if best < 0 or length < best:
                        best = length
        for i in range(tail):
            dist[queue[i]] = -1
            parent[queue[i]] = -1
    return best


def max_eccentricity(const i32[:] indptr, const i32[:] indices):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int best = 0, s, head, tail, u, w, k, du, i
    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        if tail < n:
            return -1
        if dist[queue[tail - 1]] > best:
            best = dist[queue[tail - 1]]
        for i in range(tail):
            dist[queue[i]] = -1
    return best


cdef inline bint _adjacent(const i32[:] indptr, const i32[:] indices, int a, int b) nogil:
    cdef int lo = indptr[a], hi = indptr[a + 1] - 1, mid, v
    while lo <= hi:
        mid = (lo + hi) >> 1
        v = indices[mid]
        if v == b:
            return True
        if v < b:
            lo = mid + 1
        else:
            hi = mid - 1
    return False


def find_embeddings(const i32[:] order, const i32[:] p_sort, const i32[:] p_deg,
                    const i32[:] prev_ptr, const i32[:] prev_idx,
                    const i32[:] p_rootdist,
                    const i32[:] h_indptr, const i32[:] h_indices,
                    const i32[:] h_sort, int limit=-1, restrict=None):
    cdef int k = order.shape[0]
    cdef int nh = h_indptr.shape[0] - 1
    if k == 0:
        return np.zeros((0, 0), dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok_arr
    if restrict is None:
        ok_arr = np.ones(max(nh, 1), dtype=np.uint8)
    else:
        ok_arr = np.ascontiguousarray(restrict, dtype=np.uint8)
    cdef cnp.uint8_t[:] ok = ok_arr
    cdef i32[:] img = np.full(k, -1, dtype=np.int32)
    cdef cnp.uint8_t[:] used = np.zeros(max(nh, 1), dtype=np.uint8)
    cdef i32[:] mcount = np.zeros(max(nh, 1), dtype=np.int32)
    cdef i32[:] hdist = np.full(max(nh, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(nh, 1), dtype=np.int32)
    # per-level candidate cursor: source row (-1 = all host vertices) and offset
    cdef i32[:] src = np.full(k, -1, dtype=np.int32)
    cdef i32[:] cur = np.zeros(k, dtype=np.int32)
    cdef i32[:] end = np.zeros(k, dtype=np.int32)
    cdef int maxroot = -1, t, root, h, w, j, u, anchor, head, tail, count = 0, bound
    cdef bint found, good
    for t in range(k):
        if p_rootdist[t] > maxroot:
            maxroot = p_rootdist[t]
    results = []

    for root in range(nh):
        if limit >= 0 and count >= limit:
            break
        # admissibility of the root
        if used[root] or not ok[root]:
            continue
        if h_sort[root] != p_sort[order[0]] or (h_indptr[root + 1] - h_indptr[root]) < p_deg[order[0]]:
            continue
        if mcount[root] != prev_ptr[1] - prev_ptr[0]:
            continue
        head = 0
        tail = 0
        hdist[root] = 0
        queue[tail] = root
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            if hdist[u] == maxroot:
                continue
            for j in range(h_indptr[u], h_indptr[u + 1]):
                w = h_indices[j]
                if hdist[w] < 0:
                    hdist[w] = hdist[u] + 1
                    queue[tail] = w
                    tail += 1
        # assign root
        img[0] = root
        used[root] = 1
        for j in range(h_indptr[root], h_indptr[root + 1]):
            mcount[h_indices[j]] += 1
        if k == 1:
            results.append(np.asarray(img).copy())
            count += 1
        else:
            t = 1
            _open_level(t, prev_ptr, prev_idx, img, h_indptr, src, cur, end, nh)
            while t > 0:
                found = False
                while cur[t] < end[t]:
                    if src[t] < 0:
                        h = cur[t]
                    else:
                        h = h_indices[cur[t]]
                    cur[t] += 1
                    # admissibility
                    if used[h] or not ok[h]:
                        continue
                    if h_sort[h] != p_sort[order[t]]:
                        continue
                    if (h_indptr[h + 1] - h_indptr[h]) < p_deg[order[t]]:
                        continue
                    if mcount[h] != prev_ptr[t + 1] - prev_ptr[t]:
                        continue
                    good = True
                    for j in range(prev_ptr[t], prev_ptr[t + 1]):
                        if not _adjacent(h_indptr, h_indices, h, img[prev_idx[j]]):
                            good = False
                            break
                    if not good:
                        continue
                    bound = p_rootdist[t]
                    if bound >= 0 and (hdist[h] < 0 or hdist[h] > bound):
                        continue
                    found = True
                    break
                if not found:
                    t -= 1
                    if t > 0:
                        _unassign(t, img, used, mcount, h_indptr, h_indices)
                    continue
                img[t] = h
                used[h] = 1
                for j in range(h_indptr[h], h_indptr[h + 1]):
                    mcount[h_indices[j]] += 1
                if t == k - 1:
                    results.append(np.asarray(img).copy())
                    count += 1
                    _unassign(t, img, used, mcount, h_indptr, h_indices)
                    if limit >= 0 and count >= limit:
                        break
                    continue
                t += 1
                _open_level(t, prev_ptr, prev_idx, img, h_indptr, src, cur, end, nh)
            for t in range(k - 1, 0, -1):
                if img[t] >= 0:
                    _unassign(t, img, used, mcount, h_indptr, h_indices)
        _unassign(0, img, used, mcount, h_indptr, h_indices)
        for j in range(tail):
            hdist[queue[j]] = -1
    if not results:
        return np.zeros((0, k), dtype=np.int32)
    return np.vstack(results).astype(np.int32)


cdef inline void _unassign(int t, i32[:] img, cnp.uint8_t[:] used, i32[:] mcount,
                           const i32[:] h_indptr, const i32[:] h_indices):
    cdef int h = img[t], j
    img[t] = -1
    used[h] = 0
    for j in range(h_indptr[h], h_indptr[h + 1]):
        mcount[h_indices[j]] -= 1


cdef inline void _open_level(int t, const i32[:] prev_ptr, const i32[:] prev_idx,
                             i32[:] img, const i32[:] h_indptr,
                             i32[:] src, i32[:] cur, i32[:] end, int nh):
    cdef int j, u, anchor, g
    if prev_ptr[t + 1] == prev_ptr[t]:
        src[t] = -1
        cur[t] = 0
        end[t] = nh
        return
    anchor = prev_idx[prev_ptr[t]]
    for j in range(prev_ptr[t] + 1, prev_ptr[t + 1]):
        u = prev_idx[j]
        if (h_indptr[img[u] + 1] - h_indptr[img[u]]) < (h_indptr[img[anchor] + 1] - h_indptr[img[anchor]]):
            anchor = u
    g = img[anchor]
    src[t] = g
    cur[t] = h_indptr[g]
    end[t] = h_indptr[g + 1]


def exists_pair_at_distance(const i32[:] indptr, const i32[:] indices, int d):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int s, head, tail, u, w, k, du, i
    cdef bint hit
    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        queue[tail] = s
        tail += 1
        hit = False
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du == d:
                hit = True
                break
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        for i in range(tail):
            dist[queue[i]] = -1
        if hit:
            return True
    return False


def count_pairs_at_distance(const i32[:] indptr, const i32[:] indices, int d, long long limit):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(max(n, 1), -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int s, head, tail, u, w, k, du, i
    cdef long long total = 0
    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du == d:
                if u > s:
                    total += 1
                continue
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        for i in range(tail):
            dist[queue[i]] = -1
        if total > limit:
            return total
    return total
