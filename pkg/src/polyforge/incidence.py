"""Two-sorted point/line incidence structures and their metric analytics.

An :class:`IncidenceStructure` is a finite bipartite graph whose vertices carry
a :class:`Sort`. Element ids are opaque strings; internally elements are
indexed in sorted-id order, which makes every derived enumeration
deterministic.
"""

from __future__ import annotations

import enum
import math
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from polyforge import kernels
from polyforge.errors import (
    BadGonality,
    DuplicateId,
    NotPartialPolygon,
    SelfIncidence,
    SortViolation,
    UnknownId,
)

INF = math.inf


class Sort(enum.Enum):
    POINT = "point"
    LINE = "line"

    @property
    def other(self) -> "Sort":
        return Sort.LINE if self is Sort.POINT else Sort.POINT


class IncidenceStructure:
    """Immutable bipartite incidence structure.

    Use :func:`build_structure` (or the constructor) to validate raw input.
    """

    __slots__ = ("_ids", "_index", "_sorts", "_adj", "__dict__")

    def __init__(self, points: Iterable[str], lines: Iterable[str],
                 incidences: Iterable[tuple[str, str]] = ()):
        sorts: dict[str, Sort] = {}
        for sort, group in ((Sort.POINT, points), (Sort.LINE, lines)):
            for x in group:
                if not isinstance(x, str):
                    raise TypeError(f"element ids must be strings, got {x!r}")
                if x in sorts:
                    raise DuplicateId(x)
                sorts[x] = sort
        ids = sorted(sorts)
        index = {x: i for i, x in enumerate(ids)}
        adj: list[set[int]] = [set() for _ in ids]
        for a, b in incidences:
            for x in (a, b):
                if x not in index:
                    raise UnknownId(x)
            if a == b:
                raise SelfIncidence(f"{a} | {a}")
            if sorts[a] is sorts[b]:
                raise SortViolation(f"{a} | {b}: both are {sorts[a].value}s")
            adj[index[a]].add(index[b])
            adj[index[b]].add(index[a])
        self._ids = tuple(ids)
        self._index = index
        self._sorts = tuple(sorts[x] for x in ids)
        self._adj = tuple(tuple(sorted(s)) for s in adj)

    @classmethod
    def _trusted(cls, sorts: Mapping[str, Sort],
                 edges: Iterable[tuple[str, str]]) -> "IncidenceStructure":
        # skips validation; callers guarantee bipartite, duplicate-free input
        self = cls.__new__(cls)
        ids = sorted(sorts)
        index = {x: i for i, x in enumerate(ids)}
        adj: list[list[int]] = [[] for _ in ids]
        for a, b in edges:
            i, j = index[a], index[b]
            adj[i].append(j)
            adj[j].append(i)
        self._ids = tuple(ids)
        self._index = index
        self._sorts = tuple(sorts[x] for x in ids)
        self._adj = tuple(tuple(sorted(set(r))) for r in adj)
        return self

    # -- basic access ------------------------------------------------------

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __iter__(self):
        return iter(self._ids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (self._ids == other._ids and self._sorts == other._sorts
                and self._adj == other._adj)

    def __hash__(self) -> int:
        return hash((self._ids, self._adj))

    def __repr__(self) -> str:
        return (f"IncidenceStructure({len(self.points)} points, "
                f"{len(self.lines)} lines, {self.num_incidences} incidences)")

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @cached_property
    def points(self) -> tuple[str, ...]:
        return tuple(x for x, s in zip(self._ids, self._sorts) if s is Sort.POINT)

    @cached_property
    def lines(self) -> tuple[str, ...]:
        return tuple(x for x, s in zip(self._ids, self._sorts) if s is Sort.LINE)

    @cached_property
    def num_incidences(self) -> int:
        return sum(len(r) for r in self._adj) // 2

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownId(x) from None

    def sort(self, x: str) -> Sort:
        return self._sorts[self.index(x)]

    def neighbours(self, x: str) -> tuple[str, ...]:
        return tuple(self._ids[j] for j in self._adj[self.index(x)])

    def incident(self, a: str, b: str) -> bool:
        return self.index(b) in self._adj[self.index(a)]

    def incidences(self) -> list[tuple[str, str]]:
        """Incidence pairs as ``(point, line)``, sorted."""
        out = []
        for i, row in enumerate(self._adj):
            if self._sorts[i] is Sort.POINT:
                out.extend((self._ids[i], self._ids[j]) for j in row)
        return sorted(out)

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(r) for r in self._adj), dtype=np.int32,
                           count=len(self._adj))

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(len(self._adj) + 1, dtype=np.int32)
        np.cumsum([len(r) for r in self._adj], out=indptr[1:])
        indices = np.fromiter((j for r in self._adj for j in r), dtype=np.int32,
                              count=int(indptr[-1]))
        return indptr, indices

    @cached_property
    def sort_codes(self) -> np.ndarray:
        return np.fromiter((0 if s is Sort.POINT else 1 for s in self._sorts),
                           dtype=np.int32, count=len(self._sorts))

    # -- derived structures --------------------------------------------------

    def induced(self, keep: Iterable[str]) -> "IncidenceStructure":
        keep = set(keep)
        for x in keep:
            self.index(x)
        sorts = {x: self._sorts[self._index[x]] for x in keep}
        edges = [(a, b) for a, b in self.incidences() if a in keep and b in keep]
        return IncidenceStructure._trusted(sorts, edges)

    def extended(self, new_sorts: Mapping[str, Sort],
                 new_edges: Iterable[tuple[str, str]]) -> "IncidenceStructure":
        """Copy with extra elements and incidences (validated)."""
        points = list(self.points) + [x for x, s in new_sorts.items() if s is Sort.POINT]
        lines = list(self.lines) + [x for x, s in new_sorts.items() if s is Sort.LINE]
        return IncidenceStructure(points, lines, list(self.incidences()) + list(new_edges))

    def relabelled(self, mapping: Mapping[str, str]) -> "IncidenceStructure":
        sorts = {mapping.get(x, x): s for x, s in zip(self._ids, self._sorts)}
        if len(sorts) != len(self._ids):
            raise DuplicateId("relabelling is not injective")
        edges = [(mapping.get(a, a), mapping.get(b, b)) for a, b in self.incidences()]
        return IncidenceStructure._trusted(sorts, edges)

    # -- metric analytics ----------------------------------------------------

    def distances_from(self, x: str) -> dict[str, float]:
        indptr, indices = self.csr
        dist = kernels.bfs(indptr, indices, self.index(x))
        return {y: (INF if d < 0 else int(d)) for y, d in zip(self._ids, dist.tolist())}

    @cached_property
    def component_labels(self) -> np.ndarray:
        return kernels.components(*self.csr)

    @cached_property
    def is_connected(self) -> bool:
        labels = self.component_labels
        return len(labels) == 0 or int(labels.max()) == 0


def build_structure(points: Iterable[str], lines: Iterable[str],
                    incidences: Iterable[tuple[str, str]]) -> IncidenceStructure:
    """Validate raw point/line/incidence lists into an IncidenceStructure."""
    return IncidenceStructure(points, lines, incidences)


def distance(s: IncidenceStructure, a: str, b: str) -> float:
    """Shortest-path length between ``a`` and ``b``; ``math.inf`` if disconnected."""
    ia, ib = s.index(a), s.index(b)
    if ia == ib:
        return 0
    indptr, indices = s.csr
    d = int(kernels.bfs(indptr, indices, ia)[ib])
    return INF if d < 0 else d


def girth(s: IncidenceStructure) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    cached = s.__dict__.get("_girth")
    if cached is None:
        g = kernels.girth(*s.csr)
        cached = s.__dict__["_girth"] = INF if g < 0 else int(g)
    return cached


def diameter(s: IncidenceStructure) -> float:
    """Largest pairwise distance, ``math.inf`` if disconnected."""
    cached = s.__dict__.get("_diameter")
    if cached is None:
        d = kernels.max_eccentricity(*s.csr)
        cached = s.__dict__["_diameter"] = INF if d < 0 else int(d)
    return cached


def valency(s: IncidenceStructure, a: str) -> int:
    return len(s._adj[s.index(a)])


def _check_gonality(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise BadGonality(f"gonality must be an integer >= 3, got {n!r}")


def is_partial_polygon(s: IncidenceStructure, n: int) -> bool:
    _check_gonality(n)
    return girth(s) >= 2 * n


def is_generalized_polygon(s: IncidenceStructure, n: int) -> bool:
    _check_gonality(n)
    return girth(s) == 2 * n and diameter(s) == n


# -- provenance labels ---------------------------------------------------------

BASE = "base"


def gadget_label(name: str) -> str:
    return f"gadget:{name}"


def round_label(i: int) -> str:
    return f"round:{i}"


def label_round(tag: str) -> int | None:
    """Round index of a ``round:<i>`` tag, else None."""
    if tag.startswith("round:"):
        return int(tag.split(":", 1)[1])
    return None


class PartialPolygon:
    """An incidence structure with girth >= 2n, plus per-element provenance tags.

    Tags are strings: ``"base"``, ``"gadget:<name>"`` or ``"round:<i>"``.
    """

    __slots__ = ("structure", "n", "labels")

    def __init__(self, structure: IncidenceStructure, n: int,
                 labels: Mapping[str, str] | None = None, *, check: bool = True):
        _check_gonality(n)
        if check and girth(structure) < 2 * n:
            raise NotPartialPolygon(
                f"girth {girth(structure)} < {2 * n}: not a partial {n}-gon")
        labels = dict(labels or {})
        for x in labels:
            structure.index(x)
        self.structure = structure
        self.n = n
        self.labels = {x: labels.get(x, BASE) for x in structure.ids}

    def __len__(self) -> int:
        return len(self.structure)

    def __contains__(self, x) -> bool:
        return x in self.structure

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialPolygon):
            return NotImplemented
        return (self.n == other.n and self.structure == other.structure
                and self.labels == other.labels)

    def __repr__(self) -> str:
        return f"PartialPolygon(n={self.n}, {self.structure!r})"

    @property
    def ids(self) -> tuple[str, ...]:
        return self.structure.ids

    def induced(self, keep: Iterable[str]) -> "PartialPolygon":
        sub = self.structure.induced(keep)
        return PartialPolygon(sub, self.n, {x: self.labels[x] for x in sub.ids},
                              check=False)


def as_structure(obj) -> IncidenceStructure:
    return obj.structure if isinstance(obj, PartialPolygon) else obj
