"""Reference computations that share no code with the main algorithms.

Used to cross-check the braid-move word problem and ball enumeration.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from polyforge.coxeter import INF, CoxeterDiagram


def _compose(p: tuple, q: tuple) -> tuple:
    # apply p, then q
    return tuple(q[p[k]] for k in range(len(p)))


def dihedral_permutations(m: int) -> dict[str, tuple]:
    """The two reflections generating the symmetry group of an m-gon."""
    if m == 2:
        # Klein four-group acting on four letters
        return {"s": (1, 0, 2, 3), "t": (0, 1, 3, 2)}
    s = tuple((-k) % m for k in range(m))
    t = tuple((1 - k) % m for k in range(m))
    return {"s": s, "t": t}


def symmetric_permutations(k: int) -> dict[str, tuple]:
    """Adjacent transpositions of S_k, named "1".."k-1"."""
    out = {}
    for i in range(k - 1):
        p = list(range(k))
        p[i], p[i + 1] = p[i + 1], p[i]
        out[str(i + 1)] = tuple(p)
    return out


def evaluate(word, gens: dict[str, tuple]) -> tuple:
    size = len(next(iter(gens.values())))
    acc = tuple(range(size))
    for g in word:
        acc = _compose(acc, gens[g])
    return acc


def all_words(letters, max_len: int):
    for k in range(max_len + 1):
        yield from itertools.product(letters, repeat=k)


def _gram_times_two(D: CoxeterDiagram) -> np.ndarray:
    # 2 B(e_i, e_j) = -2 cos(pi / m); integral for m in {2, 3, infinity}
    r = D.rank
    B = np.zeros((r, r), dtype=np.int64)
    for a, i in enumerate(D.generators):
        for b, j in enumerate(D.generators):
            m = D.m(i, j)
            if m == 1:
                B[a, b] = 2
            elif m == 2:
                B[a, b] = 0
            elif m == 3:
                B[a, b] = -1
            elif m == INF:
                B[a, b] = -2
            else:
                raise ValueError(f"label {m} has no integral reflection representation")
    return B


def reflection_matrices(D: CoxeterDiagram) -> list[np.ndarray]:
    """Integer matrices of the geometric representation (labels 2, 3, inf only)."""
    B2 = _gram_times_two(D)
    r = D.rank
    mats = []
    for a in range(r):
        M = np.eye(r, dtype=np.int64)
        # sigma_a(e_b) = e_b - 2B(e_a, e_b) e_a
        M[a, :] -= B2[a, :]
        mats.append(M)
    return mats


def ball_sizes_by_matrices(D: CoxeterDiagram, radius: int) -> list[int]:
    """Sizes of the balls of radius 0..radius, by BFS on matrix products."""
    mats = reflection_matrices(D)
    start = np.eye(D.rank, dtype=np.int64)
    seen = {start.tobytes()}
    layer = [start]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for X in layer:
            for M in mats:
                Y = X @ M
                key = Y.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(Y)
        layer = nxt
        sizes.append(len(seen))
    return sizes


def free_product_ball_sizes(rank: int, radius: int) -> list[int]:
    """Ball sizes when every label is infinite: reduced words avoid repeated letters."""
    sizes = [1]
    layer = 1
    for d in range(1, radius + 1):
        layer = rank if d == 1 else layer * (rank - 1)
        sizes.append(sizes[-1] + layer)
    return sizes


def bfs_distances(adj: dict, start) -> dict:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist
