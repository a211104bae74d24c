"""
Permutations of ``[n] = {1, ..., n}`` in one-line notation.

A permutation is stored as its word ``(w_1, ..., w_n)``; cycle notation is
only a rendering.  The Bruhat order is decided with the tableau criterion
(`bruhat_leq`) and independently by brute force (`bruhat_covering_closure`).

>>> w = Permutation.parse("5,2,3,1,4")
>>> length(w)
6
>>> tableau_rows(w)[1]
(1, 2, 3, 5)
>>> bruhat_leq(Permutation.parse("3,1,2"), Permutation.parse("3,2,1"))
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation", "ExcedanceProfile", "BruhatRelation",
    "identity", "longest", "simple_transposition", "all_permutations",
    "compose", "inverse", "length", "tableau_rows", "bruhat_leq",
    "bruhat_covering_closure", "excedance_profile", "weak_excedances",
    "find_321_pattern", "all_321_patterns", "is_321_avoiding",
    "conjugate_by_w0", "count_321_avoiders", "CapExceeded", "DEFAULT_CLOSURE_CAP",
]

DEFAULT_CLOSURE_CAP = 6


class CapExceeded(ValueError):
    """A brute-force routine was asked for a size above its configured cap."""


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """A permutation of ``[n]``; ``word[i - 1]`` is the image of ``i``."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"3,5,1,4,2"``; a comma-free digit string such as ``"35142"``
        is accepted when every value is a single digit."""
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(tuple(int(tok) for tok in text.split(",")))
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __str__(self) -> str:
        return ",".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles ordered by their minimum, each written from its
        maximum element: ``1764352`` gives ``[(1,), (7, 2), (6, 5, 3), (4,)]``."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                orbit.append(j)
                seen.add(j)
                j = self(j)
            top = orbit.index(max(orbit))
            out.append(tuple(orbit[top:] + orbit[:top]))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True)
class ExcedanceProfile:
    """Positions and values of the weak excedances ``w_i >= i``."""

    positions: frozenset[int]
    values: frozenset[int]


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    """The Bruhat-maximal element ``n, n-1, ..., 1``."""
    return Permutation(tuple(range(n, 0, -1)))


def simple_transposition(n: int, i: int) -> Permutation:
    """``s_i``, swapping ``i`` and ``i + 1``."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not defined in S_{n}")
    word = list(range(1, n + 1))
    word[i - 1], word[i] = word[i], word[i - 1]
    return Permutation(tuple(word))


def all_permutations(n: int) -> list[Permutation]:
    """All of ``S_n`` in lexicographic order of words."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def _check_same_size(u: Permutation, v: Permutation) -> None:
    if u.n != v.n:
        raise ValueError(f"size mismatch: S_{u.n} vs S_{v.n}")


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``u o v``, i.e. ``i -> u(v(i))``."""
    _check_same_size(u, v)
    return Permutation(tuple(u.word[x - 1] for x in v.word))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, x in enumerate(w.word, start=1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Number of inversions."""
    word = w.word
    return sum(
        1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j]
    )


@lru_cache(maxsize=None)
def _tableau(word: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    rows = []
    prefix: list[int] = []
    for x in word:
        prefix.append(x)
        rows.append(tuple(sorted(prefix)))
    return tuple(reversed(rows))


def tableau_rows(w: Permutation) -> tuple[tuple[int, ...], ...]:
    """Rows ``T_n(w), T_{n-1}(w), ..., T_1(w)``; ``T_k`` is the sorted prefix
    ``{w_1, ..., w_k}``."""
    return _tableau(w.word)


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Bruhat comparison by the tableau criterion."""
    _check_same_size(v, w)
    if v.word == w.word:
        return True
    for row_v, row_w in zip(_tableau(v.word), _tableau(w.word)):
        for a, b in zip(row_v, row_w):
            if a > b:
                return False
    return True


class BruhatRelation:
    """The Bruhat order on ``S_n`` stored as down-set bitsets.

    Built only from the generating relation (a transposition that raises the
    length) and its reflexive-transitive closure; never uses tableaux.
    """

    def __init__(self, n: int, perms: list[Permutation], down: list[int]):
        self.n = n
        self.perms = perms
        self.index = {p: k for k, p in enumerate(perms)}
        self._down = down

    def leq(self, v: Permutation, w: Permutation) -> bool:
        return bool(self._down[self.index[w]] >> self.index[v] & 1)

    def __contains__(self, pair: tuple[Permutation, Permutation]) -> bool:
        return self.leq(*pair)

    def down_set(self, w: Permutation) -> set[Permutation]:
        bits = self._down[self.index[w]]
        return {p for k, p in enumerate(self.perms) if bits >> k & 1}

    def pairs(self) -> Iterator[tuple[Permutation, Permutation]]:
        for w in self.perms:
            for v in self.down_set(w):
                yield v, w

    def __len__(self) -> int:
        return sum(bin(b).count("1") for b in self._down)


def bruhat_covering_closure(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> BruhatRelation:
    """Brute-force Bruhat order on ``S_n`` (oracle for `bruhat_leq`)."""
    if n > cap:
        raise CapExceeded(f"covering closure limited to n <= {cap}, got n = {n}")
    perms = all_permutations(n)
    index = {p.word: k for k, p in enumerate(perms)}
    lengths = [length(p) for p in perms]
    down = [0] * len(perms)
    for k in sorted(range(len(perms)), key=lengths.__getitem__):
        word = perms[k].word
        bits = 1 << k
        for a, b in itertools.combinations(range(1, n + 1), 2):
            # v = (a b) o w swaps the values a and b in w
            swapped = tuple(b if x == a else a if x == b else x for x in word)
            j = index[swapped]
            if lengths[j] < lengths[k]:
                bits |= down[j]
        down[k] = bits
    return BruhatRelation(n, perms, down)


def weak_excedances(word: Sequence[int]) -> ExcedanceProfile:
    """Excedance profile of an arbitrary integer word (no bijectivity check)."""
    pairs = [(i, x) for i, x in enumerate(word, start=1) if x >= i]
    return ExcedanceProfile(frozenset(i for i, _ in pairs), frozenset(x for _, x in pairs))


def excedance_profile(w: Permutation) -> ExcedanceProfile:
    return weak_excedances(w.word)


def all_321_patterns(w: Permutation) -> Iterator[tuple[int, int, int]]:
    """Every position triple ``i < j < k`` with ``w_i > w_j > w_k``, in
    lexicographic order."""
    word = w.word
    n = len(word)
    for i in range(n):
        for j in range(i + 1, n):
            if word[j] >= word[i]:
                continue
            for k in range(j + 1, n):
                if word[k] < word[j]:
                    yield i + 1, j + 1, k + 1


def find_321_pattern(w: Permutation) -> tuple[int, int, int] | None:
    """The lexicographically smallest 321-pattern ``(i, j, k)`` with ``i`` a
    weak excedance position and ``k`` not one, or None if ``w`` avoids 321.

    Such a pattern exists whenever any 321-pattern does.
    """
    word = w.word
    first = None
    for i, j, k in all_321_patterns(w):
        if first is None:
            first = (i, j, k)
        if word[i - 1] >= i and word[k - 1] < k:
            return i, j, k
    if first is not None:
        raise AssertionError(f"{w} has a 321-pattern but none with the excedance property")
    return None


def is_321_avoiding(w: Permutation) -> bool:
    # a decreasing subsequence of length 3 exists iff some entry has a larger
    # entry before it and a smaller entry after it
    word = w.word
    best = 0
    for j, x in enumerate(word):
        if best > x and any(y < x for y in word[j + 1:]):
            return False
        best = max(best, x)
    return True


def conjugate_by_w0(w: Permutation) -> Permutation:
    """``w0 w w0``: position ``i`` maps to ``n + 1 - w(n + 1 - i)``."""
    n = w.n
    return Permutation(tuple(n + 1 - w.word[n - i] for i in range(1, n + 1)))


def count_321_avoiders(perms: Iterable[Permutation]) -> int:
    return sum(1 for w in perms if is_321_avoiding(w))
