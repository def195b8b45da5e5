"""Whitehead automorphisms: enumeration, application, greedy cyclic-length
minimization, primitivity and simplicity decisions, Whitehead graphs with
cut-vertex tests, and the level-3 subword filling certificate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidInputError, ResourceGuardError
from .words import (
    CyclicWord,
    Word,
    alphabet,
    count_reduced,
    cyclic_reduce,
    letter_key,
    reduce_letters,
)

TAGS = ("id", "right", "left", "conj")  # x, xa, a^-1 x, a^-1 x a


@dataclass(frozen=True, slots=True)
class WhiteheadAut:
    """First kind: a letter permutation commuting with inversion, given by
    generator images.  Second kind: a fixed multiplier with one action tag
    per generator pair (the multiplier's own pair is fixed)."""

    rank: int
    kind: str
    perm: tuple[int, ...] | None = None
    multiplier: int | None = None
    tags: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind == "first":
            if self.perm is None or sorted(abs(x) for x in self.perm) != list(
                range(1, self.rank + 1)
            ):
                raise InvalidInputError("first kind needs a signed permutation")
        elif self.kind == "second":
            if self.multiplier is None or self.tags is None:
                raise InvalidInputError("second kind needs multiplier and tags")
            if not 1 <= abs(self.multiplier) <= self.rank:
                raise InvalidInputError("multiplier out of range")
            if len(self.tags) != self.rank or any(t not in TAGS for t in self.tags):
                raise InvalidInputError("bad action tags")
            if self.tags[abs(self.multiplier) - 1] != "id":
                raise InvalidInputError("multiplier pair must be fixed")
        else:
            raise InvalidInputError(f"unknown kind {self.kind!r}")

    def is_identity(self) -> bool:
        if self.kind == "first":
            return self.perm == tuple(range(1, self.rank + 1))
        return all(t == "id" for t in self.tags)  # type: ignore[union-attr]

    def inverse(self) -> "WhiteheadAut":
        if self.kind == "first":
            inv = [0] * self.rank
            for i, img in enumerate(self.perm):  # type: ignore[arg-type]
                if img > 0:
                    inv[img - 1] = i + 1
                else:
                    inv[-img - 1] = -(i + 1)
            return WhiteheadAut(self.rank, "first", perm=tuple(inv))
        return WhiteheadAut(
            self.rank,
            "second",
            multiplier=-self.multiplier,  # type: ignore[operator]
            tags=self.tags,
        )

    def letter_image(self, x: int) -> tuple[int, ...]:
        """Image of a single letter as a raw letter sequence."""
        if self.kind == "first":
            return (
                (self.perm[x - 1],) if x > 0 else (-self.perm[-x - 1],)
            )  # type: ignore[index]
        a = self.multiplier
        if abs(x) == abs(a):  # type: ignore[arg-type]
            return (x,)
        tag = self.tags[abs(x) - 1]  # type: ignore[index]
        if tag == "id":
            return (x,)
        if x > 0:
            if tag == "right":
                return (x, a)  # type: ignore[return-value]
            if tag == "left":
                return (-a, x)  # type: ignore[return-value]
            return (-a, x, a)  # type: ignore[return-value]
        if tag == "right":
            return (-a, x)  # type: ignore[return-value]
        if tag == "left":
            return (x, a)  # type: ignore[return-value]
        return (-a, x, a)  # type: ignore[return-value]

    def to_json(self) -> dict:
        if self.kind == "first":
            return {"kind": "first", "permutation": list(self.perm)}  # type: ignore[arg-type]
        return {
            "kind": "second",
            "multiplier": self.multiplier,
            "actions": list(self.tags),  # type: ignore[arg-type]
        }

    @staticmethod
    def from_json(data: dict, rank: int) -> "WhiteheadAut":
        if data["kind"] == "first":
            return WhiteheadAut(rank, "first", perm=tuple(data["permutation"]))
        return WhiteheadAut(
            rank,
            "second",
            multiplier=data["multiplier"],
            tags=tuple(data["actions"]),
        )


def identity_aut(rank: int) -> WhiteheadAut:
    return WhiteheadAut(rank, "first", perm=tuple(range(1, rank + 1)))


def apply_letters(t: WhiteheadAut, letters: Sequence[int]) -> tuple[int, ...]:
    raw: list[int] = []
    for x in letters:
        raw.extend(t.letter_image(x))
    return reduce_letters(raw)


def apply(t: WhiteheadAut, w: Word) -> Word:
    """Freely reduced image of w; first-kind images keep the length."""
    return Word(apply_letters(t, w.letters), w.rank)


def _second_kind(rank: int) -> Iterator[WhiteheadAut]:
    for a in alphabet(rank):
        others = [g for g in range(1, rank + 1) if g != abs(a)]
        for combo in itertools.product(TAGS, repeat=len(others)):
            if all(t == "id" for t in combo):
                continue
            tags = ["id"] * rank
            for g, t in zip(others, combo):
                tags[g - 1] = t
            yield WhiteheadAut(rank, "second", multiplier=a, tags=tuple(tags))


def _first_kind_generators(rank: int) -> Iterator[WhiteheadAut]:
    for i in range(1, rank + 1):
        perm = list(range(1, rank + 1))
        perm[i - 1] = -i
        yield WhiteheadAut(rank, "first", perm=tuple(perm))
    for i, j in itertools.combinations(range(1, rank + 1), 2):
        perm = list(range(1, rank + 1))
        perm[i - 1], perm[j - 1] = j, i
        yield WhiteheadAut(rank, "first", perm=tuple(perm))


@lru_cache(maxsize=None)
def enumerate_whitehead(rank: int) -> tuple[WhiteheadAut, ...]:
    """The identity, generators of the letter-permutation subgroup, and all
    non-identity second-kind automorphisms (one tag assignment per choice of
    multiplier and per inversion pair of non-multiplier letters)."""
    if rank < 1:
        raise InvalidInputError("rank must be >= 1")
    return tuple(
        itertools.chain(
            (identity_aut(rank),),
            _first_kind_generators(rank),
            _second_kind(rank),
        )
    )


def conjugation_by(letter: int, rank: int) -> WhiteheadAut:
    """The inner automorphism g -> letter^-1 g letter as a second-kind
    automorphism (all pairs tagged conj)."""
    tags = tuple(
        "id" if g == abs(letter) else "conj" for g in range(1, rank + 1)
    )
    return WhiteheadAut(rank, "second", multiplier=letter, tags=tags)


def cyclic_length(t: WhiteheadAut, cw: CyclicWord) -> int:
    return len(cyclic_reduce(Word(apply_letters(t, cw.letters), cw.rank))[1])


def minimize(w: Word | CyclicWord) -> tuple[CyclicWord, list[WhiteheadAut]]:
    """Greedy descent to a Whitehead-minimal cyclic word.

    Applies the first strictly length-reducing second-kind automorphism in
    enumeration order until none applies; the returned trace (conjugations
    for cyclic reduction interleaved with the reducing automorphisms)
    replays from w to the minimal form by word-level application.
    """
    if isinstance(w, CyclicWord):
        w = w.word()
    if w.is_trivial():
        raise InvalidInputError("the trivial word cannot be minimized")
    rank = w.rank
    trace: list[WhiteheadAut] = []

    def peel(word: Word) -> CyclicWord:
        while len(word) >= 2 and word.letters[0] == -word.letters[-1]:
            c = word.letters[0]
            trace.append(conjugation_by(c, rank))
            word = Word(word.letters[1:-1], rank)
        return CyclicWord(word.letters, rank)

    cw = peel(w)
    seconds = [t for t in enumerate_whitehead(rank) if t.kind == "second"]
    improved = True
    while improved:
        improved = False
        n = len(cw)
        for t in seconds:
            image = apply_letters(t, cw.letters)
            reduced_len = len(cyclic_reduce(Word(image, rank))[1])
            if reduced_len < n:
                trace.append(t)
                cw = peel(Word(image, rank))
                improved = True
                break
    return cw, trace


def replay_trace(w: Word, trace: Sequence[WhiteheadAut]) -> Word:
    for t in trace:
        w = apply(t, w)
    return w


@lru_cache(maxsize=200000)
def _min_facts(rank: int, key: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """(minimal cyclic length, generators present in one minimal form) for
    the conjugacy class with the given cyclically reduced representative."""
    cw = CyclicWord(key, rank)
    m, _ = minimize(cw)
    return len(m), tuple(sorted({abs(x) for x in m.letters}))


def _class_key(w: Word) -> tuple[int, ...]:
    core = cyclic_reduce(w)[1]
    if not core.letters:
        return ()
    return min(core.min_rotation(), core.inverse().min_rotation())


def is_primitive(w: Word) -> bool:
    """Is w part of some free basis?  True iff its minimal form is a single
    letter.  Words omitting generators are decided inside the subfactor they
    span (primitivity there is equivalent)."""
    if w.is_trivial():
        raise InvalidInputError("the trivial word is not primitive")
    used = sorted({abs(x) for x in w.letters})
    if len(used) < w.rank:
        compact = {g: i + 1 for i, g in enumerate(used)}
        w = Word(
            tuple(compact[x] if x > 0 else -compact[-x] for x in w.letters),
            len(used),
        )
    if w.rank >= 2 and contains_blocking_pattern(cyclic_reduce(w)[1]):
        return False  # square chain rules out a cut vertex
    length, _ = _min_facts(w.rank, _class_key(w))
    return length == 1


def is_simple(w: Word) -> bool:
    """Is w inside a proper free factor?  True iff some generator pair is
    absent from w or from its Whitehead-minimal form."""
    if w.is_trivial():
        raise InvalidInputError("the trivial word is not simple")
    used = {abs(x) for x in w.letters}
    if len(used) < w.rank:
        return True
    if contains_blocking_pattern(cyclic_reduce(w)[1]):
        return False  # square chain rules out a cut vertex
    _, used_min = _min_facts(w.rank, _class_key(w))
    return len(used_min) < w.rank


@dataclass(frozen=True)
class WhiteheadGraph:
    """Simple undirected graph on all 2N letters recording the two-letter
    cyclic factors: factor xy contributes the edge {x^-1, y}."""

    rank: int
    edges: frozenset[tuple[int, int]]

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if letter_key(a) <= letter_key(b) else (b, a)


def whitehead_graph(w: CyclicWord) -> WhiteheadGraph:
    if len(w) == 0:
        raise InvalidInputError("need a nonempty cyclic word")
    ls = w.letters
    edges = set()
    for i, x in enumerate(ls):
        y = ls[(i + 1) % len(ls)]
        edges.add(_norm_edge(-x, y))
    return WhiteheadGraph(w.rank, frozenset(edges))


def has_cut_vertex(g: WhiteheadGraph) -> bool:
    """Cut vertex over the full letter set: any single vertex whose removal
    disconnects the graph.  With isolated letters present alongside at
    least one edge, removal of an edge endpoint disconnects, so missing
    letters make this True by design."""
    if not g.edges:
        return False
    vertices = list(alphabet(g.rank))

    def components(vs: list[int]) -> int:
        remaining = set(vs)
        count = 0
        while remaining:
            count += 1
            stack = [remaining.pop()]
            while stack:
                v = stack.pop()
                for u in g.neighbors(v):
                    if u in remaining:
                        remaining.remove(u)
                        stack.append(u)
        return count

    if components(vertices) > 1:
        return True
    for v in vertices:
        rest = [u for u in vertices if u != v]
        if len(rest) >= 2 and components(rest) > 1:
            return True
    return False


def _cyclic_triples(cw: CyclicWord) -> set[tuple[int, ...]]:
    n = len(cw)
    out: set[tuple[int, ...]] = set()
    if n < 3:
        return out
    for base in (cw.letters, cw.inverse().letters):
        dbl = base + base
        for i in range(n):
            out.add(dbl[i : i + 3])
    return out


def rauzy3_full(w: CyclicWord) -> bool:
    """Do the cyclic factors of w and w^-1 exhaust all freely reduced
    length-3 words?  If so, w is filling (level-3 subword certificate)."""
    if len(w) == 0:
        raise InvalidInputError("need a nonempty cyclic word")
    if w.rank < 1:
        raise InvalidInputError("rank must be >= 1")
    needed = count_reduced(3, w.rank)
    return len(_cyclic_triples(w)) == needed


def contains_blocking_pattern(w: CyclicWord) -> bool:
    """Cheap non-simplicity certificate: the square chain
    a_N^2 a_1^2 ... a_N^2 occurs among the cyclic factors of w or w^-1."""
    r = w.rank
    pattern = [r, r] + [g for g in range(1, r + 1) for _ in (0, 1)]
    pat = tuple(pattern)
    n = len(w)
    if n < len(pat):
        return False
    for base in (w.letters, w.inverse().letters):
        dbl = base + base
        for i in range(n):
            if dbl[i : i + len(pat)] == pat:
                return True
    return False


def orbit_min_oracle(w: Word | CyclicWord, budget: int = 50000) -> CyclicWord:
    """Independent minimality oracle: breadth-first closure of the conjugacy
    class under all enumerated automorphisms at non-increasing cyclic
    length; returns the lexicographically least element of minimal length."""
    if isinstance(w, Word):
        cw = cyclic_reduce(w)[1]
    else:
        cw = w
    if len(cw) == 0:
        raise InvalidInputError("the trivial word has no orbit minimum")
    rank = cw.rank
    auts = enumerate_whitehead(rank)
    start = cw.min_rotation()
    seen = {start}
    frontier = [start]
    best = start
    while frontier:
        nxt = []
        for letters in frontier:
            cur_len = len(letters)
            for t in auts:
                image = cyclic_reduce(
                    Word(apply_letters(t, letters), rank)
                )[1]
                if len(image) > cur_len:
                    continue
                key = image.min_rotation()
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > budget:
                    raise ResourceGuardError("orbit closure exceeded budget")
                nxt.append(key)
                if (len(key), key) < (len(best), best):
                    best = key
        frontier = nxt
    return CyclicWord(best, rank)
