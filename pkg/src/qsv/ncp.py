"""
Noncrossing partitions drawn as arc diagrams on ``1, ..., n``.

An arc ``(i, j)`` with ``i < j`` joins two points; a diagram is valid when no
two arcs ``(i, k), (j, l)`` satisfy ``i <= j < k <= l`` (no crossings, no
shared left or right endpoint).  The order on diagrams is read off from
prefix sums of the associated ballot sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterable

from .perm import CapExceeded

__all__ = [
    "NoncrossingPartition", "BallotSequence", "PrefixInequalityError",
    "catalan", "enumerate_ncp", "endpoint_sets", "match_endpoints",
    "connected_components", "ballot_sequence", "ncp_leq", "ncp_covers",
    "endpoint_deficit", "chain", "cover_closure", "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 10


class PrefixInequalityError(ValueError):
    """Endpoint sets that violate ``|[k-1] & L| >= |[k] & R|`` at some ``k``."""

    def __init__(self, k: int):
        super().__init__(f"prefix inequality fails at k = {k}")
        self.k = k


@dataclass(frozen=True, order=True)
class NoncrossingPartition:
    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        arcs = tuple(sorted((int(i), int(j)) for i, j in self.arcs))
        object.__setattr__(self, "arcs", arcs)
        for i, j in arcs:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"arc {i}-{j} is not a left-to-right arc on 1..{self.n}")
        for a, (i, k) in enumerate(arcs):
            for j, l in arcs[a + 1:]:
                if i <= j < k <= l or j <= i < l <= k:
                    raise ValueError(f"arcs {i}-{k} and {j}-{l} cross or share an endpoint")

    @classmethod
    def parse(cls, text: str) -> NoncrossingPartition:
        """Parse ``"n=7; arcs=2-7,3-5,5-6"``."""
        fields = dict(
            part.strip().split("=", 1) for part in text.split(";") if part.strip()
        )
        arcs_text = fields.get("arcs", "").strip()
        arcs = []
        if arcs_text:
            for tok in arcs_text.split(","):
                i, j = tok.split("-")
                arcs.append((int(i), int(j)))
        return cls(int(fields["n"]), tuple(arcs))

    @classmethod
    def from_json(cls, data: dict | str) -> NoncrossingPartition:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], tuple(tuple(a) for a in data["arcs"]))

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    def arc_string(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in self.arcs)

    def __str__(self) -> str:
        return f"n={self.n}; arcs={self.arc_string()}"

    @property
    def plus(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.arcs)

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(j for _, j in self.arcs)


@dataclass(frozen=True)
class BallotSequence:
    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.steps):
            raise ValueError("ballot steps must be +1 or -1")
        sums = self.prefix_sums()
        if any(s < 0 for s in sums) or (sums and sums[-1] != 0):
            raise ValueError(f"not a ballot sequence: {self}")

    def prefix_sums(self) -> list[int]:
        return list(accumulate(self.steps))

    def __str__(self) -> str:
        return "".join("1" if s == 1 else "-" for s in self.steps)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Catalan numbers from the convolution recurrence."""
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def chain(n: int) -> NoncrossingPartition:
    """The diagram ``1-2, 2-3, ..., (n-1)-n``."""
    return NoncrossingPartition(n, tuple((i, i + 1) for i in range(1, n)))


@lru_cache(maxsize=None)
def _arc_sets(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # Decompose on the arc (i, n) closing at n, if any.  Without it the rest is
    # any diagram on [n-1]; with it, [1, i] and [i+1, n-1] are independent.
    if n <= 1:
        return ((),)
    out = [arcs for arcs in _arc_sets(n - 1)]
    for i in range(1, n):
        for left in _arc_sets(i):
            for inner in _arc_sets(n - 1 - i):
                shifted = tuple((a + i, b + i) for a, b in inner)
                out.append(left + ((i, n),) + shifted)
    return tuple(out)


def enumerate_ncp(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[NoncrossingPartition]:
    """All noncrossing partitions of size ``n``, sorted by arc list."""
    if n > cap:
        raise CapExceeded(f"noncrossing partition enumeration limited to n <= {cap}")
    return sorted(NoncrossingPartition(n, arcs) for arcs in _arc_sets(n))


def endpoint_sets(lam: NoncrossingPartition) -> tuple[frozenset[int], frozenset[int]]:
    """``(lambda+, lambda-)``: left and right endpoints of the arcs."""
    return lam.plus, lam.minus


def match_endpoints(n: int, left: Iterable[int], right: Iterable[int]) -> NoncrossingPartition:
    """The unique diagram with the given left and right endpoint sets.

    Points are scanned left to right; each right half-arc closes the most
    recently opened left half-arc, like matching parentheses.  A point in
    both sets closes before it opens.
    """
    left, right = set(left), set(right)
    if len(left) != len(right):
        raise ValueError(f"|L| = {len(left)} differs from |R| = {len(right)}")
    if not left | right <= set(range(1, n + 1)):
        raise ValueError(f"endpoints outside 1..{n}")
    stack: list[int] = []
    arcs = []
    for k in range(1, n + 1):
        if k in right:
            if not stack:
                raise PrefixInequalityError(k)
            arcs.append((stack.pop(), k))
        if k in left:
            stack.append(k)
    return NoncrossingPartition(n, tuple(arcs))


def connected_components(lam: NoncrossingPartition) -> list[tuple[int, ...]]:
    """Components of the arc graph, each sorted, listed by minimum."""
    parent = list(range(lam.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in lam.arcs:
        parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for x in range(1, lam.n + 1):
        groups.setdefault(find(x), []).append(x)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def ballot_sequence(lam: NoncrossingPartition) -> BallotSequence:
    plus, minus = lam.plus, lam.minus
    steps = []
    for k in range(1, lam.n + 1):
        steps.append(-1 if k in minus else 1)
        steps.append(1 if k in plus else -1)
    return BallotSequence(tuple(steps))


def _check_same_size(lam: NoncrossingPartition, mu: NoncrossingPartition) -> None:
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: {lam.n} vs {mu.n}")


def ncp_leq(lam: NoncrossingPartition, mu: NoncrossingPartition) -> bool:
    """Prefix sums of ``b^lam`` are termwise at most those of ``b^mu``."""
    _check_same_size(lam, mu)
    a = ballot_sequence(lam).prefix_sums()
    b = ballot_sequence(mu).prefix_sums()
    return all(x <= y for x, y in zip(a, b))


def ncp_covers(mu: NoncrossingPartition) -> list[NoncrossingPartition]:
    """Diagrams obtained from ``mu`` by one covering move: delete an arc
    ``(i, i+1)``, or split an arc ``(i, k)`` into ``(i, j), (j, k)`` when the
    result is still noncrossing."""
    out = set()
    for arc in mu.arcs:
        rest = tuple(a for a in mu.arcs if a != arc)
        i, k = arc
        if k == i + 1:
            out.add(NoncrossingPartition(mu.n, rest))
        for j in range(i + 1, k):
            try:
                out.add(NoncrossingPartition(mu.n, rest + ((i, j), (j, k))))
            except ValueError:
                continue
    return sorted(out)


def cover_closure(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[NoncrossingPartition, set[NoncrossingPartition]]:
    """Down-sets of the reflexive-transitive closure of `ncp_covers`; an
    oracle for `ncp_leq` that never looks at ballot sequences."""
    down: dict[NoncrossingPartition, set[NoncrossingPartition]] = {}

    def visit(mu: NoncrossingPartition) -> set[NoncrossingPartition]:
        if mu not in down:
            below = {mu}
            for lam in ncp_covers(mu):
                below |= visit(lam)
            down[mu] = below
        return down[mu]

    for mu in enumerate_ncp(n, cap):
        visit(mu)
    return down


def endpoint_deficit(lam: NoncrossingPartition, k: int) -> tuple[int, int]:
    """``(|lambda+ & [k-1]| - |lambda- & [k]|, |lambda+ & [k]| - |lambda- & [k]|)``."""
    if not 1 <= k <= lam.n:
        raise ValueError(f"k = {k} outside 1..{lam.n}")
    plus, minus = lam.plus, lam.minus
    right = sum(1 for j in minus if j <= k)
    return (
        sum(1 for i in plus if i <= k - 1) - right,
        sum(1 for i in plus if i <= k) - right,
    )
