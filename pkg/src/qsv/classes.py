"""
Excedance classes of ``S_n`` and their extremal permutations.

Two permutations are equivalent when they share both the positions and the
values of their weak excedances.  The classes are indexed by noncrossing
partitions: the class of ``lam`` consists of the ``w`` with
``E_val(w) = [n] - lam+`` and ``E_pos(w) = [n] - lam-``.  Each class is a
Bruhat interval ``[T_lam, Q_lam]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ncp import (
    NoncrossingPartition,
    connected_components,
    enumerate_ncp,
    endpoint_deficit,
    match_endpoints,
    ncp_leq,
)
from .perm import (
    CapExceeded,
    Permutation,
    all_permutations,
    bruhat_leq,
    conjugate_by_w0,
    excedance_profile,
    is_321_avoiding,
)

__all__ = [
    "ExcedanceClass", "qsv_permutation", "qsv_permutation_from_cycles",
    "enumerate_qsv", "min_permutation", "excedance_class_of",
    "partition_into_classes", "class_leq", "dominated_permutations",
    "tableau_count_check", "strict_excedance_class_of", "DEFAULT_CLASS_CAP",
]

DEFAULT_CLASS_CAP = 7


@dataclass(frozen=True)
class ExcedanceClass:
    shape: NoncrossingPartition
    members: frozenset[Permutation]
    min_elt: Permutation
    max_elt: Permutation

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[Permutation]:
        return sorted(self.members)

    def to_json(self, with_members: bool = False) -> dict:
        out = {
            "shape": self.shape.to_json(),
            "size": self.size,
            "min": str(self.min_elt),
            "max": str(self.max_elt),
        }
        if with_members:
            out["members"] = [str(w) for w in self.sorted_members()]
        return out


def qsv_permutation(lam: NoncrossingPartition) -> Permutation:
    """``Q_lam``: a right endpoint goes to its left neighbour, every other
    point to the largest element of its component.

    Cross-checked against the product of decreasing cycles over components.
    """
    left_of = {j: i for i, j in lam.arcs}
    top = {}
    for comp in connected_components(lam):
        for x in comp:
            top[x] = comp[-1]
    word = tuple(left_of.get(j, top[j]) for j in range(1, lam.n + 1))
    q = Permutation(word)
    if q != qsv_permutation_from_cycles(lam):
        raise AssertionError(f"arc and cycle constructions of Q disagree for {lam}")
    return q


def qsv_permutation_from_cycles(lam: NoncrossingPartition) -> Permutation:
    """Product over components ``c_1 < ... < c_m`` of the cycle
    ``(c_m ... c_2 c_1)``."""
    word = list(range(1, lam.n + 1))
    for comp in connected_components(lam):
        cyc = comp[::-1]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            word[a - 1] = b
    return Permutation(tuple(word))


def enumerate_qsv(n: int, cap: int = DEFAULT_CLASS_CAP) -> list[Permutation]:
    """``QSV_n``, sorted lexicographically."""
    if n > cap:
        raise CapExceeded(f"QSV enumeration limited to n <= {cap}")
    out = sorted(qsv_permutation(lam) for lam in enumerate_ncp(n))
    if len(set(out)) != len(out):
        raise AssertionError("QSV elements are not distinct")
    return out


def min_permutation(lam: NoncrossingPartition) -> Permutation:
    """``T_lam``: ``lam+`` placed increasingly under ``lam-`` and the
    complement of ``lam+`` increasingly under the complement of ``lam-``."""
    n = lam.n
    plus, minus = sorted(lam.plus), sorted(lam.minus)
    rest_vals = [x for x in range(1, n + 1) if x not in lam.plus]
    rest_pos = [y for y in range(1, n + 1) if y not in lam.minus]
    word = [0] * n
    for b, a in zip(minus, plus):
        word[b - 1] = a
    for y, x in zip(rest_pos, rest_vals):
        word[y - 1] = x
    t = Permutation(tuple(word))
    if not is_321_avoiding(t):
        raise AssertionError(f"T for {lam} contains a 321-pattern")
    return t


def excedance_class_of(w: Permutation) -> NoncrossingPartition:
    """The diagram indexing the class of ``w``."""
    prof = excedance_profile(w)
    full = set(range(1, w.n + 1))
    return match_endpoints(w.n, full - prof.values, full - prof.positions)


def strict_excedance_class_of(w: Permutation) -> NoncrossingPartition:
    """Class label under the strict-excedance convention, obtained by
    conjugating with ``w0`` (which swaps the two conventions)."""
    return excedance_class_of(conjugate_by_w0(w))


def partition_into_classes(n: int, cap: int = DEFAULT_CLASS_CAP) -> list[ExcedanceClass]:
    """Scan ``S_n`` and bucket permutations by excedance profile.

    Each bucket is checked against its shape: ``Q`` and ``T`` are members and
    bound every member in the Bruhat order.
    """
    if n > cap:
        raise CapExceeded(f"class partition limited to n <= {cap}")
    buckets: dict[tuple[frozenset[int], frozenset[int]], list[Permutation]] = {}
    for w in all_permutations(n):
        prof = excedance_profile(w)
        buckets.setdefault((prof.positions, prof.values), []).append(w)
    classes = []
    for members in buckets.values():
        shape = excedance_class_of(members[0])
        top, bottom = qsv_permutation(shape), min_permutation(shape)
        member_set = frozenset(members)
        if top not in member_set or bottom not in member_set:
            raise AssertionError(f"extremal elements missing from class {shape}")
        for w in members:
            if not (bruhat_leq(bottom, w) and bruhat_leq(w, top)):
                raise AssertionError(f"{w} escapes [{bottom}, {top}]")
        classes.append(ExcedanceClass(shape, member_set, bottom, top))
    classes.sort(key=lambda c: c.shape)
    return classes


def class_leq(lam: NoncrossingPartition, mu: NoncrossingPartition) -> bool:
    """Order on classes induced by the Bruhat order; equals the ballot order."""
    return ncp_leq(lam, mu)


def dominated_permutations(
    mu: NoncrossingPartition, cap: int = DEFAULT_CLASS_CAP
) -> set[Permutation]:
    """Bruhat down-set of ``Q_mu``, checked to be the union of the classes
    ``C_lam`` with ``lam <= mu``."""
    if mu.n > cap:
        raise CapExceeded(f"down-set scan limited to n <= {cap}")
    top = qsv_permutation(mu)
    below = {w for w in all_permutations(mu.n) if bruhat_leq(w, top)}
    by_class = {w for w in all_permutations(mu.n) if ncp_leq(excedance_class_of(w), mu)}
    if below != by_class:
        raise AssertionError(f"down-set of Q for {mu} is not a union of lower classes")
    return below


def tableau_count_check(w: Permutation, k: int) -> tuple[int, int]:
    """``(#{i > k : w_i < k}, #{i <= k : w_i > k})``, checked against the
    endpoint deficit of the class of ``w`` at ``k``."""
    if not 1 <= k <= w.n:
        raise ValueError(f"k = {k} outside 1..{w.n}")
    low = sum(1 for i in range(k + 1, w.n + 1) if w(i) < k)
    high = sum(1 for i in range(1, k + 1) if w(i) > k)
    if (low, high) != endpoint_deficit(excedance_class_of(w), k):
        raise AssertionError(f"tableau counts of {w} at k = {k} disagree with its class")
    return low, high
