"""Coxeter diagrams and the word problem for their groups.

Group elements are represented by a canonical reduced word: the
lexicographically least word (in diagram generator order) among all reduced
words for the element. By Matsumoto's theorem the reduced words of an element
form one orbit under braid moves, so canonicalising a reduced word means
exploring that orbit. Multiplication by a generator either shortens the word
(the generator is a right descent, i.e. ends some orbit word) or appends it.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from polyforge.errors import LengthMismatch, UnknownGenerator

INF = math.inf


def _label(m) -> float | int:
    if m is None or m == INF or (isinstance(m, str) and m.lower() in ("inf", "infinity", "∞")):
        return INF
    m = int(m)
    if m < 2:
        raise ValueError(f"off-diagonal labels must be >= 2 or infinity, got {m}")
    return m


class CoxeterDiagram:
    """Generators in a fixed order plus the labels m(i, j); absent pairs are 2."""

    def __init__(self, generators: Sequence[str], edges: Iterable[tuple] = ()):
        generators = tuple(str(g) for g in generators)
        if len(set(generators)) != len(generators):
            raise ValueError("duplicate generator")
        self.generators = generators
        self._pos = {g: k for k, g in enumerate(generators)}
        self._m: dict[frozenset, float | int] = {}
        for i, j, m in edges:
            i, j = self._check(str(i)), self._check(str(j))
            if i == j:
                if int(m) != 1:
                    raise ValueError("diagonal labels must be 1")
                continue
            self._m[frozenset((i, j))] = _label(m)
        # word -> canonical word, and canonical word -> right descents
        self._canon: dict[tuple, tuple] = {}
        self._descents: dict[tuple, frozenset] = {}
        self._orbits: dict[tuple, frozenset] = {}
        self._lock = threading.Lock()

    def _check(self, g: str) -> str:
        if g not in self._pos:
            raise UnknownGenerator(g)
        return g

    def m(self, i: str, j: str) -> float | int:
        i, j = self._check(i), self._check(j)
        if i == j:
            return 1
        return self._m.get(frozenset((i, j)), 2)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def edges(self) -> list[tuple[str, str, float | int]]:
        """Pairs with label other than 2, in generator order."""
        out = []
        for i, j in itertools.combinations(self.generators, 2):
            m = self.m(i, j)
            if m != 2:
                out.append((i, j, m))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return self.generators == other.generators and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"CoxeterDiagram({list(self.generators)}, {self.edges()})"

    def word_key(self, word: Sequence[str]) -> tuple[int, ...]:
        return tuple(self._pos[g] for g in word)

    def parse_word(self, word) -> tuple[str, ...]:
        """Accept a sequence of generator names, or a string of one-letter names."""
        if isinstance(word, str):
            if word == "" or word in ("e", "ε"):
                return ()
            if " " in word:
                letters = word.split()
            elif "," in word:
                letters = word.split(",")
            else:
                letters = list(word)
        else:
            letters = [str(g) for g in word]
        return tuple(self._check(g) for g in letters)

    # -- braid orbits -------------------------------------------------------

    def _orbit(self, word: tuple) -> frozenset:
        """All words reachable from a reduced word by braid moves."""
        seen = {word}
        todo = [word]
        while todo:
            w = todo.pop()
            for p in range(len(w) - 1):
                i, j = w[p], w[p + 1]
                if i == j:
                    continue
                m = self.m(i, j)
                if m == INF or p + m > len(w):
                    continue
                alt = tuple(i if k % 2 == 0 else j for k in range(m))
                if w[p:p + m] != alt:
                    continue
                swapped = tuple(j if k % 2 == 0 else i for k in range(m))
                v = w[:p] + swapped + w[p + m:]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return frozenset(seen)

    def _canonical(self, reduced: tuple) -> tuple:
        hit = self._canon.get(reduced)
        if hit is not None:
            return hit
        orbit = self._orbit(reduced)
        canon = min(orbit, key=self.word_key)
        with self._lock:
            for w in orbit:
                self._canon[w] = canon
            self._orbits[canon] = orbit
            self._descents[canon] = frozenset(w[-1] for w in orbit if w)
        return canon

    def descents(self, word: tuple) -> frozenset:
        return self._descents[self._canonical(word)]

    def times(self, canon: tuple, g: str) -> tuple:
        """Canonical word of ``canon * g``."""
        g = self._check(g)
        canon = self._canonical(canon)
        if g in self._descents[canon]:
            w = min((w for w in self._orbits[canon] if w[-1] == g), key=self.word_key)
            return self._canonical(w[:-1])
        return self._canonical(canon + (g,))


@dataclass(frozen=True)
class GroupElement:
    word: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        if not self.word:
            return "e"
        if all(len(g) == 1 for g in self.word):
            return "".join(self.word)
        return " ".join(self.word)


def identity() -> GroupElement:
    return GroupElement(())


def reduce_word(D: CoxeterDiagram, w) -> GroupElement:
    """Canonical reduced form of a word."""
    canon: tuple = ()
    for g in D.parse_word(w):
        canon = D.times(canon, g)
    return GroupElement(D._canonical(canon))


def multiply(D: CoxeterDiagram, x: GroupElement, g: str) -> GroupElement:
    return GroupElement(D.times(x.word, g))


def product(D: CoxeterDiagram, x: GroupElement, y: GroupElement) -> GroupElement:
    canon = x.word
    for g in y.word:
        canon = D.times(canon, g)
    return GroupElement(canon)


def words_equal(D: CoxeterDiagram, w1, w2) -> bool:
    return reduce_word(D, w1) == reduce_word(D, w2)


def right_descents(D: CoxeterDiagram, x: GroupElement) -> frozenset:
    """Generators g with l(xg) < l(x)."""
    return D.descents(x.word)


def element_key(D: CoxeterDiagram, x: GroupElement) -> tuple:
    return (x.length, D.word_key(x.word))


def ball(D: CoxeterDiagram, n: int) -> list[GroupElement]:
    """All elements of length <= n, sorted by length then word."""
    if n < 0:
        raise ValueError("radius must be >= 0")
    layer = {()}
    everything = {()}
    for _ in range(n):
        nxt = set()
        for w in layer:
            desc = D.descents(w)
            for g in D.generators:
                if g not in desc:
                    nxt.add(D.times(w, g))
        everything |= nxt
        layer = nxt
    return sorted((GroupElement(w) for w in everything), key=lambda x: element_key(D, x))


def sphere(D: CoxeterDiagram, n: int) -> list[GroupElement]:
    return [x for x in ball(D, n) if x.length == n]


def coset_min_rep(D: CoxeterDiagram, w: GroupElement, J: Iterable[str]) -> GroupElement:
    """Shortest element of the coset w<J>, by greedy right descent."""
    J = [D._check(str(j)) for j in J]
    canon = D._canonical(w.word)
    while True:
        desc = D.descents(canon)
        step = next((j for j in J if j in desc), None)
        if step is None:
            return GroupElement(canon)
        canon = D.times(canon, step)


@dataclass(frozen=True)
class SphericalCheck:
    found: bool
    witness: tuple[str, str, str] | None = None

    def __bool__(self) -> bool:
        return self.found


def _inverse(m) -> Fraction:
    return Fraction(0) if m == INF else Fraction(1, int(m))


def has_spherical_rank3(D: CoxeterDiagram) -> SphericalCheck:
    """First generator triple whose parabolic subgroup is finite."""
    for i, j, k in itertools.combinations(D.generators, 3):
        if _inverse(D.m(i, j)) + _inverse(D.m(i, k)) + _inverse(D.m(j, k)) > 1:
            return SphericalCheck(True, (i, j, k))
    return SphericalCheck(False)


def adjacent_in_ball(D: CoxeterDiagram, w: GroupElement, n: int) -> list[tuple[GroupElement, str]]:
    """Neighbours ``(w g, g)`` of a length-(n+1) element that lie in the n-ball."""
    if w.length != n + 1:
        raise LengthMismatch(f"expected length {n + 1}, got {w.length}")
    desc = D.descents(w.word)
    out = [(GroupElement(D.times(w.word, g)), g) for g in D.generators if g in desc]
    if not has_spherical_rank3(D) and not 1 <= len(out) <= 2:
        raise RuntimeError(f"{w} has {len(out)} neighbours in the ball")
    return out


# -- serialisation ------------------------------------------------------------

def _json_label(m):
    return "inf" if m == INF else int(m)


def diagram_to_dict(D: CoxeterDiagram) -> dict:
    return {"generators": list(D.generators),
            "edges": [[i, j, _json_label(m)] for i, j, m in D.edges()]}


def diagram_from_dict(data: Mapping) -> CoxeterDiagram:
    return CoxeterDiagram(data["generators"], [tuple(e) for e in data.get("edges", [])])


def triangle(m12, m13, m23, names=("1", "2", "3")) -> CoxeterDiagram:
    """Rank-3 diagram with the given labels."""
    a, b, c = names
    return CoxeterDiagram(names, [(a, b, m12), (a, c, m13), (b, c, m23)])
