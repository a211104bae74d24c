"""
The group algebra of ``S_n`` over the rationals and its quotient ``TL_n(2)``.

``TL_n(2)`` is realised as ``QS_n`` modulo the two-sided ideal generated by
the alternating sum over a copy of ``S_3`` on consecutive positions, with
``s_i -> 1 - e_i``.  Elements of the quotient are written in the basis of
321-avoiding permutations: `normal_form` rewrites every 321-pattern with the
five-term relation until none are left.

>>> from qsv.perm import Permutation
>>> print(phi_expand(Permutation.parse("321")))
1,2,3 - 1,3,2 - 2,1,3 + 2,3,1 + 3,1,2
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _iter_perms
from typing import Iterable, Iterator, Mapping, Sequence

from .classes import partition_into_classes
from .ncp import catalan
from .perm import (
    CapExceeded,
    Permutation,
    all_321_patterns,
    all_permutations,
    compose,
    find_321_pattern,
    identity,
    is_321_avoiding,
    length,
    simple_transposition,
)

__all__ = [
    "GroupAlgebraVector", "TLWord", "BasisReport", "rewrite_321",
    "normal_form", "phi_expand", "avoiding_basis", "coordinates",
    "basis_check", "basis_report", "random_section_basis", "tl_multiply",
    "kernel_generator", "rank", "DEFAULT_TL_CAP",
]

DEFAULT_TL_CAP = 6

Scalar = int | Fraction


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class GroupAlgebraVector:
    """A finite rational combination of permutations of one fixed ``n``."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Permutation, Scalar] | None = None):
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise ValueError(f"{w} is not in S_{n}")
            c = _norm(Fraction(c) if not isinstance(c, int) else c)
            if c:
                clean[w] = c
        self._terms = clean

    @classmethod
    def basis(cls, w: Permutation, coeff: Scalar = 1) -> GroupAlgebraVector:
        return cls(w.n, {w: coeff})

    @classmethod
    def zero(cls, n: int) -> GroupAlgebraVector:
        return cls(n)

    def items(self) -> Iterator[tuple[Permutation, Scalar]]:
        return iter(sorted(self._terms.items()))

    def support(self) -> set[Permutation]:
        return set(self._terms)

    def coefficient(self, w: Permutation) -> Scalar:
        return self._terms.get(w, 0)

    def as_dict(self) -> dict[Permutation, Scalar]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraVector):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def _check(self, other: GroupAlgebraVector) -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: S_{self.n} vs S_{other.n}")

    def __add__(self, other: GroupAlgebraVector) -> GroupAlgebraVector:
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return GroupAlgebraVector(self.n, out)

    def __neg__(self) -> GroupAlgebraVector:
        return GroupAlgebraVector(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: GroupAlgebraVector) -> GroupAlgebraVector:
        return self + (-other)

    def __mul__(self, other: GroupAlgebraVector | Scalar) -> GroupAlgebraVector:
        if isinstance(other, (int, Fraction)):
            return GroupAlgebraVector(self.n, {w: c * other for w, c in self._terms.items()})
        self._check(other)
        out: dict[Permutation, Scalar] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                uv = compose(u, v)
                out[uv] = out.get(uv, 0) + a * b
        return GroupAlgebraVector(self.n, out)

    def __rmul__(self, other: Scalar) -> GroupAlgebraVector:
        return self * other

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(w) if mag == 1 else f"{mag}*{w}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self) -> str:
        return f"GroupAlgebraVector(n={self.n}, {self})"


@dataclass(frozen=True)
class TLWord:
    """A product ``e_{g_1} e_{g_2} ...`` of Temperley-Lieb generators."""

    n: int
    generators: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if not 1 <= g < self.n:
                raise ValueError(f"e_{g} is not a generator of TL_{self.n}")

    def to_vector(self) -> GroupAlgebraVector:
        """The product of ``1 - s_i`` in ``QS_n`` (not reduced)."""
        out = GroupAlgebraVector.basis(identity(self.n))
        for g in self.generators:
            e = GroupAlgebraVector(
                self.n, {identity(self.n): 1, simple_transposition(self.n, g): -1}
            )
            out = out * e
        return out


def rewrite_321(w: Permutation, pattern: tuple[int, int, int]) -> GroupAlgebraVector:
    """Right side of the five-term relation for the 321-pattern at positions
    ``i < j < k`` of ``w``; every permutation in it is Bruhat-below ``w``."""
    i, j, k = pattern
    word = w.word
    if not (1 <= i < j < k <= w.n and word[i - 1] > word[j - 1] > word[k - 1]):
        raise ValueError(f"{pattern} is not a 321-pattern of {w}")
    a, b, c = word[i - 1], word[j - 1], word[k - 1]

    def placed(x: int, y: int, z: int) -> Permutation:
        out = list(word)
        out[i - 1], out[j - 1], out[k - 1] = x, y, z
        return Permutation(tuple(out))

    return GroupAlgebraVector(w.n, {
        placed(b, a, c): 1,
        placed(a, c, b): 1,
        placed(b, c, a): -1,
        placed(c, a, b): -1,
        placed(c, b, a): 1,
    })


def normal_form(
    v: GroupAlgebraVector, rng: random.Random | None = None
) -> GroupAlgebraVector:
    """Expand ``v`` modulo the kernel in the 321-avoiding basis.

    By default the longest remaining term is rewritten first, at the pattern
    picked by `find_321_pattern`.  With ``rng`` both the term and the pattern
    are chosen at random, which is used to test that the result does not
    depend on the rewriting order.
    """
    work: dict[Permutation, Scalar] = v.as_dict()
    out: dict[Permutation, Scalar] = {}
    heap = [(-length(w), w.word, w) for w in work]
    heapq.heapify(heap)
    while work:
        if rng is None:
            _, _, w = heapq.heappop(heap)
            if w not in work:
                continue
            pattern = find_321_pattern(w)
        else:
            w = rng.choice(list(work))
            patterns = list(all_321_patterns(w))
            pattern = rng.choice(patterns) if patterns else None
        c = work.pop(w)
        if pattern is None:
            out[w] = out.get(w, 0) + c
            continue
        for u, a in rewrite_321(w, pattern).items():
            new = work.get(u, 0) + c * a
            if new:
                if u not in work and rng is None:
                    heapq.heappush(heap, (-length(u), u.word, u))
                work[u] = new
            else:
                work.pop(u, None)
    return GroupAlgebraVector(v.n, out)


@lru_cache(maxsize=None)
def _phi_expand_cached(w: Permutation) -> GroupAlgebraVector:
    return normal_form(GroupAlgebraVector.basis(w))


def phi_expand(w: Permutation) -> GroupAlgebraVector:
    """Image of ``w`` in ``TL_n(2)`` written in the 321-avoiding basis."""
    return _phi_expand_cached(w)


@lru_cache(maxsize=None)
def _avoiders(n: int) -> tuple[Permutation, ...]:
    return tuple(w for w in all_permutations(n) if is_321_avoiding(w))


def avoiding_basis(n: int) -> list[Permutation]:
    """The 321-avoiding permutations of ``S_n``, lexicographically."""
    return list(_avoiders(n))


def coordinates(v: GroupAlgebraVector) -> list[Scalar]:
    """Coordinates of a normal form in `avoiding_basis`."""
    basis = _avoiders(v.n)
    index = {w: k for k, w in enumerate(basis)}
    row: list[Scalar] = [0] * len(basis)
    for w, c in v.items():
        if w not in index:
            raise ValueError(f"{w} is not 321-avoiding; reduce first")
        row[index[w]] = c
    return row


def _integer_rows(rows: Sequence[Sequence[Scalar]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            row_i, row_r = m[i], m[r]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def _dependency(rows: Sequence[Sequence[Scalar]]) -> list[Fraction] | None:
    """A nonzero ``c`` with ``sum c_i rows_i = 0``, or None."""
    m = len(rows)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == k)) for k in range(m)]
        for i, row in enumerate(rows)
    ]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col] / aug[r][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    if r == m:
        return None
    return aug[r][ncols:]


@dataclass(frozen=True)
class BasisReport:
    size: int
    dimension: int
    rank: int
    witness: tuple[tuple[Permutation, Scalar], ...] | None

    @property
    def is_basis(self) -> bool:
        return self.size == self.dimension == self.rank


def basis_report(perms: Sequence[Permutation]) -> BasisReport:
    """Rank of the images of ``perms`` and, when dependent, a vanishing
    combination of them."""
    perms = list(perms)
    sizes = {w.n for w in perms}
    if len(sizes) > 1:
        raise ValueError(f"permutations of different sizes: {sorted(sizes)}")
    n = sizes.pop() if sizes else 0
    rows = [coordinates(phi_expand(w)) for w in perms]
    r = rank(rows) if rows else 0
    witness = None
    if r < len(rows):
        dep = _dependency(rows)
        assert dep is not None
        witness = tuple((w, _norm(c)) for w, c in zip(perms, dep) if c)
    return BasisReport(len(perms), catalan(n), r, witness)


def basis_check(perms: Sequence[Permutation]) -> bool:
    """Whether the images of ``perms`` form a basis of ``TL_n(2)``."""
    return basis_report(perms).is_basis


def random_section_basis(
    n: int, seed: int, cap: int = DEFAULT_TL_CAP
) -> tuple[list[Permutation], bool]:
    """One uniformly random member from each excedance class, and whether
    the resulting set maps to a basis."""
    if n > cap:
        raise CapExceeded(f"random sections limited to n <= {cap}")
    rng = random.Random(seed)
    section = [rng.choice(c.sorted_members()) for c in partition_into_classes(n)]
    return section, basis_check(section)


def tl_multiply(a: TLWord, b: TLWord) -> GroupAlgebraVector:
    """Product of two generator words, reduced to the 321-avoiding basis."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: TL_{a.n} vs TL_{b.n}")
    return normal_form(a.to_vector() * b.to_vector())


def _embed(n: int, i: int, sigma: Sequence[int]) -> Permutation:
    word = list(range(1, n + 1))
    for offset, x in enumerate(sigma):
        word[i - 1 + offset] = i - 1 + x
    return Permutation(tuple(word))


def _sign(sigma: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(sigma)) for b in range(a + 1, len(sigma)) if sigma[a] > sigma[b])
    return -1 if inv % 2 else 1


def kernel_generator(n: int, i: int = 1) -> GroupAlgebraVector:
    """``(13) - (123) - (132) + (12) + (23) - e`` acting on positions
    ``i, i+1, i+2``."""
    if not 1 <= i <= n - 2:
        raise ValueError(f"no copy of S_3 at position {i} in S_{n}")
    return GroupAlgebraVector(
        n, {_embed(n, i, s): -_sign(s) for s in _iter_perms((1, 2, 3))}
    )


def max_coefficient(perms: Iterable[Permutation]) -> int:
    """Largest absolute coefficient over the normal forms of ``perms``."""
    return max((abs(c) for w in perms for _, c in phi_expand(w).items()), default=0)
