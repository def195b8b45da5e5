"""Free-group word arithmetic over a fixed rank-N basis.

A letter is a nonzero int: +i is the i-th generator, -i its inverse, for
1 <= i <= rank.  Words are immutable and always freely reduced; cyclic
words are additionally cyclically reduced and stored with a fixed rotation.

Text syntax: generators a_1..a_N print as a..z, inverses as A..Z
("abAB" = a b a^-1 b^-1).  Ranks above 26 use "x3"/"X3" index tokens.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError

_ASCII_A = ord("a")


def inverse_letter(x: int) -> int:
    return -x


def letter_key(x: int) -> tuple[int, int]:
    """Sort key for display order: a < a^-1 < b < b^-1 < ..."""
    return (abs(x), 0 if x > 0 else 1)


@lru_cache(maxsize=None)
def alphabet(rank: int) -> tuple[int, ...]:
    """All 2N letters in display order."""
    out: list[int] = []
    for g in range(1, rank + 1):
        out.extend((g, -g))
    return tuple(out)


def _check_letters(letters: Iterable[int], rank: int) -> tuple[int, ...]:
    ls = tuple(letters)
    for x in ls:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise InvalidInputError(f"letter {x!r} out of range for rank {rank}")
    return ls


def letters_to_text(letters: Sequence[int], rank: int) -> str:
    if rank <= 26:
        return "".join(
            chr(_ASCII_A + abs(x) - 1) if x > 0 else chr(_ASCII_A + abs(x) - 1).upper()
            for x in letters
        )
    return "".join(f"x{x}" if x > 0 else f"X{-x}" for x in letters)


def text_to_letters(text: str, rank: int) -> list[int]:
    """Parse the text syntax into raw letters (no free reduction applied)."""
    out: list[int] = []
    if rank <= 26:
        for ch in text:
            if ch.isspace():
                continue
            if not ch.isalpha():
                raise InvalidInputError(f"bad character {ch!r} in word")
            idx = ord(ch.lower()) - _ASCII_A + 1
            if idx > rank:
                raise InvalidInputError(f"letter {ch!r} exceeds rank {rank}")
            out.append(idx if ch.islower() else -idx)
        return out
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch not in ("x", "X"):
            raise InvalidInputError(f"expected x/X token at position {i}")
        j = i + 1
        while j < len(text) and text[j].isdigit():
            j += 1
        if j == i + 1:
            raise InvalidInputError(f"missing generator index at position {i}")
        idx = int(text[i + 1 : j])
        if not 1 <= idx <= rank:
            raise InvalidInputError(f"generator index {idx} exceeds rank {rank}")
        out.append(idx if ch == "x" else -idx)
        i = j
    return out


def reduce_letters(raw: Sequence[int]) -> tuple[int, ...]:
    """Stack-based free reduction of a raw letter sequence."""
    stack: list[int] = []
    for x in raw:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word. Construct unreduced input via free_reduce()."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        ls = _check_letters(self.letters, self.rank)
        object.__setattr__(self, "letters", ls)
        for a, b in zip(ls, ls[1:]):
            if a == -b:
                raise InvalidInputError("word is not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def text(self) -> str:
        return letters_to_text(self.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.rank)

    def is_trivial(self) -> bool:
        return not self.letters

    @staticmethod
    def parse(text: str, rank: int) -> "Word":
        return free_reduce(text_to_letters(text, rank), rank)


@dataclass(frozen=True, slots=True)
class CyclicWord:
    """A cyclically reduced word with a fixed stored rotation.

    Equality is rotation-sensitive; use equivalent() / class_key() for
    conjugacy-class comparisons.
    """

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        ls = _check_letters(self.letters, self.rank)
        object.__setattr__(self, "letters", ls)
        for a, b in zip(ls, ls[1:]):
            if a == -b:
                raise InvalidInputError("cyclic word is not freely reduced")
        if len(ls) >= 2 and ls[0] == -ls[-1]:
            raise InvalidInputError("cyclic word is not cyclically reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def text(self) -> str:
        return letters_to_text(self.letters, self.rank)

    def word(self) -> Word:
        return Word(self.letters, self.rank)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(tuple(-x for x in reversed(self.letters)), self.rank)

    def rotations(self) -> Iterator[tuple[int, ...]]:
        n = len(self.letters)
        dbl = self.letters + self.letters
        for r in range(n):
            yield dbl[r : r + n]

    def min_rotation(self) -> tuple[int, ...]:
        return min(self.rotations()) if self.letters else ()

    def equivalent(self, other: "CyclicWord") -> bool:
        """Equal up to rotation."""
        return (
            self.rank == other.rank
            and len(self) == len(other)
            and self.min_rotation() == other.min_rotation()
        )

    @staticmethod
    def parse(text: str, rank: int) -> "CyclicWord":
        return cyclic_reduce(Word.parse(text, rank))[1]


def free_reduce(raw: Sequence[int], rank: int) -> Word:
    """Freely reduce a raw letter sequence into a Word."""
    _check_letters(raw, rank)
    return Word(reduce_letters(raw), rank)


def concat(*words: Word) -> Word:
    """Freely reduced product of words over a common rank."""
    if not words:
        raise InvalidInputError("concat needs at least one word")
    rank = words[0].rank
    raw: list[int] = []
    for w in words:
        if w.rank != rank:
            raise InvalidInputError("mixed ranks in concat")
        raw.extend(w.letters)
    return free_reduce(raw, rank)


def cyclic_reduce(w: Word) -> tuple[Word, CyclicWord]:
    """Split w = c · core · c^-1 with core cyclically reduced.

    Returns (conjugator c, core).  The empty word yields two empties.
    """
    ls = list(w.letters)
    conj: list[int] = []
    while len(ls) >= 2 and ls[0] == -ls[-1]:
        conj.append(ls[0])
        ls = ls[1:-1]
    return Word(tuple(conj), w.rank), CyclicWord(tuple(ls), w.rank)


def iota_length(w: Word) -> int:
    """Length of the maximal initial segment cancelling against the tail."""
    return len(cyclic_reduce(w)[0])


def is_proper_power(w: CyclicWord) -> tuple[bool, CyclicWord, int]:
    """Maximal-root decomposition w = root^exponent.

    Returns (exponent >= 2, root, exponent); the exponent divides |w|.
    """
    n = len(w)
    if n == 0:
        raise InvalidInputError("empty word has no root decomposition")
    ls = w.letters
    for p in range(1, n):
        if n % p:
            continue
        if all(ls[i] == ls[i % p] for i in range(n)):
            return True, CyclicWord(ls[:p], w.rank), n // p
    return False, w, 1


def count_reduced(n: int, rank: int) -> int:
    """Size of the sphere of freely reduced words of length exactly n."""
    if n == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (n - 1)


def _nth_allowed(rank: int, prev: int, d: int) -> int:
    ab = alphabet(rank)
    skip = ab.index(-prev)
    return ab[d] if d < skip else ab[d + 1]


def _realize_from(digits: list[int], letters: list[int], rank: int, pos: int) -> None:
    ab = alphabet(rank)
    for i in range(pos, len(digits)):
        if i == 0:
            letters[i] = ab[digits[i]]
        else:
            letters[i] = _nth_allowed(rank, letters[i - 1], digits[i])


def enumerate_reduced(
    n: int, rank: int, start: int = 0, stop: int | None = None
) -> Iterator[Word]:
    """All freely reduced words of length exactly n, in a fixed total order.

    The order is lexicographic in display order (a < a^-1 < b < ...).
    start/stop address the stream by index so shards can be restarted.
    """
    if n < 1 or rank < 1:
        raise InvalidInputError("need n >= 1 and rank >= 1")
    total = count_reduced(n, rank)
    stop = total if stop is None else min(stop, total)
    if start < 0 or start > total:
        raise InvalidInputError("start out of range")
    if start >= stop:
        return
    digits = [0] * n
    rem = start
    tail = (2 * rank - 1) ** (n - 1)
    digits[0], rem = divmod(rem, tail)
    for i in range(1, n):
        tail //= 2 * rank - 1
        digits[i], rem = divmod(rem, tail)
    letters = [0] * n
    _realize_from(digits, letters, rank, 0)
    idx = start
    while True:
        yield Word(tuple(letters), rank)
        idx += 1
        if idx >= stop:
            return
        pos = n - 1
        while pos >= 0:
            base = 2 * rank if pos == 0 else 2 * rank - 1
            digits[pos] += 1
            if digits[pos] < base:
                break
            digits[pos] = 0
            pos -= 1
        _realize_from(digits, letters, rank, max(pos, 0))


def enumerate_cyclically_reduced(n: int, rank: int) -> Iterator[CyclicWord]:
    """All cyclically reduced words of length exactly n."""
    for w in enumerate_reduced(n, rank):
        if n == 1 or w.letters[0] != -w.letters[-1]:
            yield CyclicWord(w.letters, rank)


@lru_cache(maxsize=None)
def signed_permutations(rank: int) -> tuple[tuple[int, ...], ...]:
    """The 2^N N! relabelings of the basis (letter permutations fixing inversion)."""
    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(tuple(s * g for g, s in zip(perm, signs)))
    return tuple(out)


def relabel_letters(letters: Sequence[int], images: Sequence[int]) -> tuple[int, ...]:
    """Apply a signed permutation given by generator images."""
    return tuple(images[x - 1] if x > 0 else -images[-x - 1] for x in letters)


def _display_codes(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * (abs(x) - 1) + (0 if x > 0 else 1) for x in letters)


def cyclic_class_key(letters: Sequence[int], rank: int) -> tuple[int, ...]:
    """Canonical representative of a cyclic word's class under rotation,
    inversion and relabeling; minimal in display order (a < a^-1 < b < ...)
    over the orbit."""
    ls = tuple(letters)
    n = len(ls)
    if n == 0:
        return ()
    inv = tuple(-x for x in reversed(ls))
    best: tuple[int, ...] | None = None
    best_code: tuple[int, ...] | None = None
    for images in signed_permutations(rank):
        for base in (relabel_letters(ls, images), relabel_letters(inv, images)):
            dbl = base + base
            for r in range(n):
                cand = dbl[r : r + n]
                code = _display_codes(cand)
                if best_code is None or code < best_code:
                    best, best_code = cand, code
    return best  # type: ignore[return-value]


def _class_representatives(
    n: int, rank: int, skip_powers: bool
) -> Iterator[CyclicWord]:
    for cw in enumerate_cyclically_reduced(n, rank):
        if skip_powers and is_proper_power(cw)[0]:
            continue
        if cw.letters == cyclic_class_key(cw.letters, rank):
            yield cw


def index_candidates_exact(n: int, rank: int) -> Iterator[CyclicWord]:
    """One representative per rotation/inversion/relabeling class of the
    root-free cyclically reduced words of length exactly n."""
    return _class_representatives(n, rank, skip_powers=True)


def enumerate_index_candidates(n: int, rank: int) -> Iterator[CyclicWord]:
    """Class representatives of all root-free cyclically reduced words of
    length <= n; index values over these reach the max over all such words."""
    if n < 1:
        raise InvalidInputError("need n >= 1")
    for m in range(1, n + 1):
        yield from index_candidates_exact(m, rank)


def subword_count(sigma: Word, w: Word) -> int:
    """Occurrences (overlapping allowed) of sigma as a factor of w."""
    m, n = len(sigma), len(w)
    if m == 0:
        raise InvalidInputError("empty query word")
    if m > n:
        return 0
    if w.rank <= 26:
        hay, needle = w.text(), sigma.text()
        count = pos = 0
        while True:
            pos = hay.find(needle, pos)
            if pos < 0:
                return count
            count += 1
            pos += 1
    count = 0
    ls, ss = w.letters, sigma.letters
    for i in range(n - m + 1):
        if ls[i : i + m] == ss:
            count += 1
    return count


@dataclass(frozen=True)
class WordStats:
    length: int
    iota_length: int
    subword_counts: dict[str, int]


def word_stats(w: Word, queries: Iterable[Word] | None = None) -> WordStats:
    """Length, cancellation-tail length, and factor counts for query words.

    Default queries are all freely reduced length-2 words of w's rank.
    """
    if queries is None:
        queries = list(enumerate_reduced(2, w.rank)) if len(w) >= 1 else []
    counts = {q.text(): subword_count(q, w) for q in queries}
    return WordStats(length=len(w), iota_length=iota_length(w), subword_counts=counts)
