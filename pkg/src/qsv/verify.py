"""
Exhaustive checks of the structural results, each returning a JSON-ready
report ``{"theorem", "n", "checks": [...], "pass"}``.

Each sub-check records its outcome and, on failure, a witness.  Reports
contain no timings or other run-dependent data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .classes import (
    enumerate_qsv,
    excedance_class_of,
    min_permutation,
    partition_into_classes,
    qsv_permutation,
)
from .groebner import DEFAULT_IDEAL_CAP, verify_theorem_vanishingQSV
from .ncp import catalan, cover_closure, enumerate_ncp, ncp_leq
from .perm import (
    DEFAULT_CLOSURE_CAP,
    CapExceeded,
    all_permutations,
    bruhat_covering_closure,
    bruhat_leq,
)
from .qpoly import (
    DEFAULT_DEGREE_BOUND,
    compositions_up_to,
    evaluate_at_permutation,
    single_cycle_expansion,
    vanishing_poly,
)
from .tl import DEFAULT_TL_CAP, basis_report, phi_expand

__all__ = [
    "Report", "verify_interval", "verify_quotient_order", "verify_tl_basis",
    "verify_tl_sections", "verify_vanishing", "verify_ideal", "THEOREMS",
]

EXHAUSTIVE_SECTION_LIMIT = 5000


@dataclass
class Report:
    theorem: str
    n: int
    checks: list[dict] = field(default_factory=list)

    def record(self, name: str, ok: bool, **info) -> bool:
        self.checks.append({"name": name, "pass": bool(ok), **info})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "n": self.n, "checks": self.checks, "pass": self.passed}


def verify_interval(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """Every excedance class is the Bruhat interval ``[T, Q]`` of the
    brute-force order."""
    if n > cap:
        raise CapExceeded(f"interval check uses the covering closure, limited to n <= {cap}")
    rep = Report("interval", n)
    rel = bruhat_covering_closure(n, cap)
    classes = partition_into_classes(n, max(cap, n))
    rep.record("class_count", len(classes) == catalan(n), classes=len(classes), catalan=catalan(n))
    witness = None
    for c in classes:
        interval = {w for w in rel.perms if rel.leq(c.min_elt, w) and rel.leq(w, c.max_elt)}
        if interval != set(c.members):
            extra = sorted(interval - c.members)
            missing = sorted(c.members - interval)
            witness = {
                "shape": str(c.shape),
                "in_interval_only": [str(w) for w in extra],
                "in_class_only": [str(w) for w in missing],
            }
            break
    rep.record("class_equals_interval", witness is None, **({"witness": witness} if witness else {}))
    return rep.to_json()


def _closure_leq(down: dict, lam, mu) -> bool:
    return lam in down[mu]


def verify_quotient_order(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """The order induced on classes by Bruhat order equals the ballot order,
    and on ``QSV_n`` Bruhat order, the covering-move order and ballot
    dominance agree."""
    if n > cap:
        raise CapExceeded(f"quotient check uses the covering closure, limited to n <= {cap}")
    rep = Report("quotient-order", n)
    rel = bruhat_covering_closure(n, cap)
    classes = partition_into_classes(n, max(cap, n))
    shapes = [c.shape for c in classes]

    # C_lam <= C_mu when some member of C_lam lies below some member of C_mu
    induced = {}
    for a in classes:
        for b in classes:
            induced[a.shape, b.shape] = any(
                rel.leq(u, v) for u in a.members for v in b.members
            )
    witness = next(
        ({"lam": str(l), "mu": str(m), "induced": induced[l, m]}
         for l in shapes for m in shapes if induced[l, m] != ncp_leq(l, m)),
        None,
    )
    rep.record("induced_equals_ballot", witness is None, **({"witness": witness} if witness else {}))

    anti = next(
        ({"lam": str(l), "mu": str(m)}
         for l in shapes for m in shapes if l != m and induced[l, m] and induced[m, l]),
        None,
    )
    rep.record("antisymmetric", anti is None, **({"witness": anti} if anti else {}))
    trans = next(
        ({"lam": str(l), "mu": str(m), "nu": str(v)}
         for l in shapes for m in shapes if induced[l, m]
         for v in shapes if induced[m, v] and not induced[l, v]),
        None,
    )
    rep.record("transitive", trans is None, **({"witness": trans} if trans else {}))

    down = cover_closure(n)
    bij = None
    for lam in shapes:
        for mu in shapes:
            by_q = bruhat_leq(qsv_permutation(lam), qsv_permutation(mu))
            by_moves = _closure_leq(down, lam, mu)
            by_ballot = ncp_leq(lam, mu)
            if not by_q == by_moves == by_ballot:
                bij = {"lam": str(lam), "mu": str(mu), "bruhat_on_q": by_q,
                       "covering_moves": by_moves, "ballot": by_ballot}
                break
        if bij:
            break
    rep.record("qsv_order_criteria_agree", bij is None, **({"witness": bij} if bij else {}))
    return rep.to_json()


def verify_tl_basis(n: int, cap: int = DEFAULT_TL_CAP, triangular_cap: int = 5) -> dict:
    """``QSV_n`` and the 321-avoiders map to bases of ``TL_n(2)``; normal
    forms are unitriangular with respect to the class order (for
    ``n <= triangular_cap``)."""
    if n > cap:
        raise CapExceeded(f"TL checks limited to n <= {cap}")
    rep = Report("tl-basis", n)
    qsv = basis_report(enumerate_qsv(n))
    rep.record("qsv_rank", qsv.is_basis, rank=qsv.rank, dimension=qsv.dimension,
               **({"witness": _witness(qsv.witness)} if qsv.witness else {}))
    avoid = basis_report(min_permutation(lam) for lam in enumerate_ncp(n))
    rep.record("avoider_rank", avoid.is_basis, rank=avoid.rank, dimension=avoid.dimension)
    if n <= triangular_cap:
        rep.record(**_triangularity(n))
    return rep.to_json()


def _triangularity(n: int) -> dict:
    max_coef = 0
    for w in all_permutations(n):
        lam = excedance_class_of(w)
        nf = phi_expand(w)
        t = min_permutation(lam)
        bad = None
        if nf.coefficient(t) != 1:
            bad = f"coefficient of {t} is {nf.coefficient(t)}"
        for u, c in nf.items():
            max_coef = max(max_coef, abs(c))
            if isinstance(c, Fraction):
                bad = f"non-integer coefficient {c} on {u}"
            elif not ncp_leq(excedance_class_of(u), lam):
                bad = f"{u} lies in a class not below {lam}"
            if bad:
                break
        if bad:
            return {"name": "unitriangular", "ok": False, "witness": {"perm": str(w), "reason": bad}}
    return {"name": "unitriangular", "ok": True, "max_abs_coefficient": max_coef}


def _witness(dep) -> list[list[str]]:
    return [[str(w), str(c)] for w, c in dep]


def verify_tl_sections(
    n: int, seed: int = 0, samples: int = 100, cap: int = DEFAULT_TL_CAP
) -> dict:
    """Any choice of one permutation per class maps to a basis.  Sections
    are enumerated exhaustively when there are at most
    ``EXHAUSTIVE_SECTION_LIMIT``, otherwise sampled with seeds
    ``seed, seed + 1, ...``."""
    if n > cap:
        raise CapExceeded(f"TL checks limited to n <= {cap}")
    rep = Report("tl-sections", n)
    classes = partition_into_classes(n)
    total = 1
    for c in classes:
        total *= c.size
    if total <= EXHAUSTIVE_SECTION_LIMIT:
        sections = [list(s) for s in product(*(c.sorted_members() for c in classes))]
        mode = "exhaustive"
    else:
        sections = []
        for k in range(samples):
            rng = random.Random(seed + k)
            sections.append([rng.choice(c.sorted_members()) for c in classes])
        mode = "sampled"
    failure = None
    for s in sections:
        r = basis_report(s)
        if not r.is_basis:
            failure = {"section": [str(w) for w in s], "rank": r.rank,
                       "dependency": _witness(r.witness or ())}
            break
    rep.record("sections_are_bases", failure is None, mode=mode, sections=len(sections),
               total_sections=total, **({"witness": failure} if failure else {}))
    return rep.to_json()


def verify_vanishing(n: int, max_degree: int = DEFAULT_DEGREE_BOUND, cap: int = 7) -> dict:
    """Every ``P_alpha`` with ``|alpha| <= max_degree`` vanishes on ``QSV_n``,
    and the cycle expansion matches evaluation on single-cycle points."""
    if n > cap:
        raise CapExceeded(f"vanishing sweep limited to n <= {cap}")
    rep = Report("vanishing", n)
    points = enumerate_qsv(n)
    alphas = compositions_up_to(max_degree, n)
    witness = None
    for a in alphas:
        P = vanishing_poly(a, n)
        for s in points:
            v = evaluate_at_permutation(P, s)
            if v:
                witness = {"alpha": list(a.parts), "point": str(s), "value": str(v)}
                break
        if witness:
            break
    rep.record("palpha_vanish", witness is None, compositions=len(alphas), points=len(points),
               **({"witness": witness} if witness else {}))

    single = [s for s in points if sum(1 for c in s.cycles() if len(c) > 1) <= 1]
    witness = None
    for a in alphas:
        P = vanishing_poly(a, n)
        for s in single:
            direct = single_cycle_expansion(a, s)
            value = evaluate_at_permutation(P, s)
            if direct != value or direct != 0:
                witness = {"alpha": list(a.parts), "point": str(s),
                           "expansion": str(direct), "evaluation": str(value)}
                break
        if witness:
            break
    rep.record("cycle_expansion_matches", witness is None, points=len(single),
               **({"witness": witness} if witness else {}))
    return rep.to_json()


def verify_ideal(n: int, max_degree: int | None = None, cap: int = DEFAULT_IDEAL_CAP) -> dict:
    report = verify_theorem_vanishingQSV(n, max_degree, cap)
    return {"theorem": "ideal", **report}


THEOREMS = {
    "interval": verify_interval,
    "quotient-order": verify_quotient_order,
    "tl-basis": verify_tl_basis,
    "tl-sections": verify_tl_sections,
    "vanishing": verify_vanishing,
    "ideal": verify_ideal,
}
