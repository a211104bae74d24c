"""
Groebner bases over the rationals in graded-lex order (``x1 > ... > xn``).

Includes Buchberger's algorithm with the product and chain criteria,
standard monomials of zero-dimensional ideals, vanishing ideals of finite
point sets (Buchberger-Moeller), and the degree-by-degree saturation used to
compare ``<P_alpha>``, ``<M_alpha>`` and the ideal of the points ``QSV_n``.

>>> x1, x2 = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
>>> [str(g) for g in buchberger([x1 * x1 - x2, x2 - 1])]
['x1^2 - 1', 'x2 - 1']
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .classes import enumerate_qsv
from .ncp import catalan
from .perm import CapExceeded
from .qpoly import (
    Composition,
    Exponent,
    Polynomial,
    compositions,
    evaluate_at_permutation,
    grlex_key,
    monomial_qsym,
    top_component,
    vanishing_poly,
)

__all__ = [
    "TermOrder", "GRLEX", "IdealBasis", "SaturationResult", "SaturationError",
    "leading_term", "leading_monomial", "divide", "s_polynomial", "buchberger",
    "is_groebner_basis", "standard_monomials", "minimal_monomials",
    "point_vanishing_ideal", "saturate", "saturate_qsym_generators",
    "saturate_vanishing_generators", "verify_grin",
    "verify_theorem_vanishingQSV", "DEFAULT_IDEAL_CAP",
]

DEFAULT_IDEAL_CAP = 4

Terms = dict[Exponent, Fraction]


@dataclass(frozen=True)
class TermOrder:
    """Graded-lex with ``x1 > x2 > ... > xn``; the only order implemented."""

    kind: str = "grlex"
    precedence: str = "x1>...>xn"

    def key(self, exp: Exponent) -> tuple[int, Exponent]:
        return grlex_key(exp)

    def to_json(self) -> dict:
        return {"order": self.kind, "precedence": self.precedence}


GRLEX = TermOrder()


@dataclass
class IdealBasis:
    generators: list[Polynomial]
    groebner: list[Polynomial] | None = None
    n: int = 0

    def __post_init__(self) -> None:
        if not self.n and self.generators:
            self.n = self.generators[0].n

    def compute(self) -> list[Polynomial]:
        if self.groebner is None:
            self.groebner = buchberger(self.generators)
        return self.groebner

    def to_json(self) -> dict:
        out = {"n": self.n, **GRLEX.to_json()}
        out["groebner"] = [g.to_json() for g in self.compute()]
        return out


# Internally polynomials are plain dicts exponent -> Fraction.

def _terms(f: Polynomial) -> Terms:
    return {e: Fraction(c) for e, c in f.terms.items()}


def _poly(n: int, t: Terms) -> Polynomial:
    return Polynomial(n, t)


def _lm(t: Terms) -> Exponent:
    return max(t, key=grlex_key)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _axpy(p: Terms, coef: Fraction, shift: Exponent, g: Terms) -> None:
    """``p -= coef * x^shift * g`` in place."""
    for e, c in g.items():
        key = tuple(x + y for x, y in zip(e, shift))
        v = p.get(key, 0) - coef * c
        if v:
            p[key] = v
        else:
            p.pop(key, None)


def _monic(t: Terms) -> Terms:
    lc = t[_lm(t)]
    return {e: c / lc for e, c in t.items()}


def _reduce(f: Terms, basis: Sequence[tuple[Exponent, Terms]]) -> Terms:
    """Full reduction of ``f`` by monic polynomials given with their leading
    monomials."""
    p = dict(f)
    r: Terms = {}
    while p:
        lt = _lm(p)
        c = p[lt]
        for lm, g in basis:
            if _divides(lm, lt):
                _axpy(p, c, _sub_exp(lt, lm), g)
                break
        else:
            r[lt] = c
            del p[lt]
    return r


def leading_monomial(f: Polynomial, order: TermOrder = GRLEX) -> Exponent:
    if f.is_zero():
        raise ValueError("the zero polynomial has no leading term")
    return max(f.terms, key=order.key)


def leading_term(f: Polynomial, order: TermOrder = GRLEX) -> Polynomial:
    """The greatest term of ``f``, coefficient included."""
    lm = leading_monomial(f, order)
    return Polynomial.monomial(lm, f.coefficient(lm))


def divide(
    f: Polynomial, G: Sequence[Polynomial], order: TermOrder = GRLEX
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: ``f = sum q_i g_i + r`` with no term of ``r``
    divisible by any ``lt(g_i)``.  The first divisor in list order is used."""
    if not G or any(g.is_zero() for g in G):
        raise ValueError("divisors must be a nonempty list of nonzero polynomials")
    n = f.n
    gs = [_terms(g) for g in G]
    lms = [_lm(g) for g in gs]
    qs: list[Terms] = [{} for _ in gs]
    p = _terms(f)
    r: Terms = {}
    while p:
        lt = _lm(p)
        c = p[lt]
        for idx, (lm, g) in enumerate(zip(lms, gs)):
            if _divides(lm, lt):
                coef = c / g[lm]
                shift = _sub_exp(lt, lm)
                qs[idx][shift] = qs[idx].get(shift, 0) + coef
                _axpy(p, coef, shift, g)
                break
        else:
            r[lt] = c
            del p[lt]
    return [_poly(n, q) for q in qs], _poly(n, r)


def _spoly(f: Terms, g: Terms) -> Terms:
    lf, lg = _lm(f), _lm(g)
    m = _lcm(lf, lg)
    out: Terms = {}
    _axpy(out, -1 / f[lf], _sub_exp(m, lf), f)
    _axpy(out, 1 / g[lg], _sub_exp(m, lg), g)
    return out


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    return _poly(f.n, _spoly(_terms(f), _terms(g)))


def _reduced_basis(polys: list[Terms]) -> list[Terms]:
    """Minimalise, inter-reduce and normalise a Groebner basis."""
    polys = [_monic(p) for p in polys if p]
    polys.sort(key=lambda p: grlex_key(_lm(p)))
    minimal: list[Terms] = []
    for p in polys:
        lm = _lm(p)
        if not any(_divides(_lm(q), lm) for q in minimal):
            minimal.append(p)
    out = []
    for k, p in enumerate(minimal):
        lm = _lm(p)
        others = [(_lm(q), q) for j, q in enumerate(minimal) if j != k]
        tail = {e: c for e, c in p.items() if e != lm}
        reduced = _reduce(tail, others)
        reduced[lm] = Fraction(1)
        out.append(reduced)
    out.sort(key=lambda p: grlex_key(_lm(p)), reverse=True)
    return out


def _buchberger_terms(gens: list[Terms]) -> list[Terms]:
    G: list[Terms] = []
    lms: list[Exponent] = []
    pairs: set[tuple[int, int]] = set()

    def add(p: Terms) -> None:
        p = _monic(p)
        G.append(p)
        lms.append(_lm(p))
        k = len(G) - 1
        for j in range(k):
            pairs.add((j, k))

    for g in gens:
        if g:
            add(g)
    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: (grlex_key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = lms[i], lms[j]
        m = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # product criterion
        if any(
            k not in (i, j)
            and _divides(lms[k], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        r = _reduce(_spoly(G[i], G[j]), list(zip(lms, G)))
        if r:
            add(r)
    return _reduced_basis(G)


def buchberger(gens: Sequence[Polynomial], order: TermOrder = GRLEX) -> list[Polynomial]:
    """The reduced Groebner basis of ``<gens>`` (monic, sorted by leading
    monomial, largest first)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    basis = _buchberger_terms([_terms(g) for g in gens])
    return [_poly(n, g) for g in basis]


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    """Every S-polynomial reduces to zero."""
    ts = [_terms(g) for g in G if not g.is_zero()]
    basis = [(_lm(t), _monic(t)) for t in ts]
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            if _reduce(_spoly(ts[a], ts[b]), basis):
                return False
    return True


def minimal_monomials(G: Sequence[Polynomial]) -> list[Exponent]:
    """Minimal generators of the leading-monomial ideal of ``G``."""
    lms = sorted({leading_monomial(g) for g in G}, key=grlex_key)
    out: list[Exponent] = []
    for m in lms:
        if not any(_divides(a, m) for a in out):
            out.append(m)
    return out


def _pure_power_bounds(lms: Sequence[Exponent], n: int) -> list[int] | None:
    bounds = []
    for i in range(n):
        powers = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0]
        if not powers:
            return None
        bounds.append(min(powers))
    return bounds


def standard_monomials(G: Sequence[Polynomial], order: TermOrder = GRLEX) -> list[Exponent]:
    """Monomials outside the leading-term ideal of the Groebner basis ``G``,
    in increasing graded-lex order."""
    if not G:
        raise ValueError("empty basis: the zero ideal is not zero-dimensional")
    n = G[0].n
    lms = minimal_monomials(G)
    if any(sum(m) == 0 for m in lms):
        return []
    bounds = _pure_power_bounds(lms, n)
    if bounds is None:
        raise ValueError("ideal is not zero-dimensional: some variable has no pure power leading term")
    out = [
        exp for exp in product(*(range(b) for b in bounds))
        if not any(_divides(m, exp) for m in lms)
    ]
    return sorted(out, key=order.key)


def _standard_count(G: Sequence[Polynomial]) -> int | None:
    try:
        return len(standard_monomials(G))
    except ValueError:
        return None


def point_vanishing_ideal(points: Sequence[Sequence[Scalar]]) -> IdealBasis:
    """Reduced Groebner basis of the ideal of ``points`` (Buchberger-Moeller).

    Monomials are visited in increasing graded-lex order; a monomial whose
    evaluation vector is a combination of the earlier standard monomials'
    vectors yields a basis element, otherwise it becomes standard.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have different dimensions")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")

    def evaluate(exp: Exponent) -> list[Fraction]:
        out = []
        for p in pts:
            v = Fraction(1)
            for x, e in zip(p, exp):
                if e:
                    v *= x ** e
            out.append(v)
        return out

    rows: list[tuple[int, list[Fraction], Terms]] = []  # (pivot, vector, combination)
    standard: list[Exponent] = []
    leads: list[Exponent] = []
    basis: list[Terms] = []
    candidates = {(0,) * n}
    while candidates:
        t = min(candidates, key=grlex_key)
        candidates.discard(t)
        if any(_divides(m, t) for m in leads) or t in standard:
            continue
        vec = evaluate(t)
        combo: Terms = {t: Fraction(1)}
        for pivot, rvec, rcombo in rows:
            if vec[pivot]:
                f = vec[pivot] / rvec[pivot]
                vec = [a - f * b for a, b in zip(vec, rvec)]
                for e, c in rcombo.items():
                    v = combo.get(e, 0) - f * c
                    if v:
                        combo[e] = v
                    else:
                        combo.pop(e, None)
        nz = next((k for k, a in enumerate(vec) if a), None)
        if nz is None:
            leads.append(t)
            basis.append(combo)
            continue
        rows.append((nz, vec, combo))
        standard.append(t)
        for i in range(n):
            candidates.add(tuple(e + int(j == i) for j, e in enumerate(t)))
    G = [_poly(n, g) for g in _reduced_basis(basis)]
    return IdealBasis(generators=list(G), groebner=G, n=n)


Scalar = int | Fraction


class SaturationError(RuntimeError):
    """The standard-monomial count did not stabilise by the degree bound."""


@dataclass
class SaturationResult:
    degree: int
    basis: IdealBasis
    history: list[tuple[int, int | None]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(standard_monomials(self.basis.compute()))


def _max_degree(n: int) -> int:
    return n * (n - 1) // 2 + 2


def saturate(
    n: int,
    family: Callable[[Composition, int], Polynomial],
    max_degree: int | None = None,
) -> SaturationResult:
    """Add ``family(alpha, n)`` for ``|alpha| = 1, 2, ...`` until the number
    of standard monomials is finite and repeats for two consecutive degrees."""
    if max_degree is None:
        max_degree = _max_degree(n)
    gens: list[Polynomial] = []
    gb: list[Terms] = []
    history: list[tuple[int, int | None]] = []
    prev: int | None = None
    for d in range(1, max_degree + 1):
        new = [family(a, n) for a in compositions(d, n)]
        gens.extend(new)
        basis = [(_lm(g), g) for g in gb]
        extra = [r for r in (_reduce(_terms(f), basis) for f in new) if r]
        if extra:
            gb = _buchberger_terms(gb + extra)
        G = [_poly(n, g) for g in gb]
        count = _standard_count(G) if G else None
        history.append((d, count))
        if count is not None and count == prev:
            return SaturationResult(d, IdealBasis(gens, G, n), history)
        prev = count
    raise SaturationError(
        f"no stabilisation by degree {max_degree} for n = {n}: history {history}"
    )


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"ideal computations limited to n <= {cap}")


def saturate_qsym_generators(
    n: int, max_degree: int | None = None, cap: int = DEFAULT_IDEAL_CAP
) -> SaturationResult:
    """Saturation of ``<M_alpha>``; the stable dimension must be ``C_n``."""
    _check_cap(n, cap)
    res = saturate(n, monomial_qsym, max_degree)
    if res.dimension != catalan(n):
        raise AssertionError(f"<M_alpha> quotient has dimension {res.dimension}, not {catalan(n)}")
    return res


def saturate_vanishing_generators(
    n: int, max_degree: int | None = None, cap: int = DEFAULT_IDEAL_CAP
) -> SaturationResult:
    """Saturation of ``<P_alpha>``; the stable dimension must be ``C_n``."""
    _check_cap(n, cap)
    res = saturate(n, vanishing_poly, max_degree)
    if res.dimension != catalan(n):
        raise AssertionError(f"<P_alpha> quotient has dimension {res.dimension}, not {catalan(n)}")
    return res


def verify_grin(gens: Sequence[Polynomial]) -> bool:
    """``in(gr(I)) = in(I)``: the top components of a Groebner basis of ``I``
    generate an ideal with the same leading monomials."""
    G = buchberger(gens)
    standard_monomials(G)  # raises unless zero-dimensional
    tops = [top_component(g) for g in G]
    H = buchberger(tops)
    return minimal_monomials(G) == minimal_monomials(H)


def _fmt_exp(exp: Exponent) -> str:
    mono = "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e)
    return mono or "1"


def verify_theorem_vanishingQSV(
    n: int, max_degree: int | None = None, cap: int = DEFAULT_IDEAL_CAP
) -> dict:
    """Check that ``<P_alpha>`` is the ideal of ``QSV_n`` and that its
    associated graded ideal is ``<M_alpha>``.

    Sub-checks run in order and stop at the first failure, which carries a
    witness.  The report has no timings, so it is reproducible byte for byte.
    """
    _check_cap(n, cap)
    target = catalan(n)
    checks: list[dict] = []
    report = {"n": n, "catalan": target, **GRLEX.to_json(), "checks": checks}

    def record(name: str, ok: bool, **info) -> bool:
        checks.append({"name": name, "pass": ok, **info})
        return ok

    def finish() -> dict:
        report["pass"] = all(c["pass"] for c in checks)
        return report

    try:
        p_sat = saturate(n, vanishing_poly, max_degree)
    except SaturationError as exc:
        record("b_palpha_dimension", False, witness=str(exc))
        return finish()
    points = enumerate_qsv(n)

    witness = None
    for d in range(1, p_sat.degree + 1):
        for a in compositions(d, n):
            P = vanishing_poly(a, n)
            for s in points:
                v = evaluate_at_permutation(P, s)
                if v:
                    witness = {"alpha": list(a.parts), "point": str(s), "value": str(v)}
                    break
            if witness:
                break
        if witness:
            break
    if not record("a_palpha_vanish_on_qsv", witness is None,
                  max_degree=p_sat.degree, points=len(points), **({"witness": witness} if witness else {})):
        return finish()

    p_gb = p_sat.basis.compute()
    p_std = standard_monomials(p_gb)
    if not record("b_palpha_dimension", len(p_std) == target, dimension=len(p_std),
                  saturation_degree=p_sat.degree,
                  history=[[d, c] for d, c in p_sat.history]):
        return finish()

    pts = point_vanishing_ideal([s.word for s in points])
    pt_gb = pts.compute()
    pt_std = standard_monomials(pt_gb)
    if not record("c_points_dimension", len(pt_std) == target, dimension=len(pt_std)):
        return finish()

    p_lead, pt_lead = minimal_monomials(p_gb), minimal_monomials(pt_gb)
    same_gb = p_gb == pt_gb
    info = {"leading_monomials": [_fmt_exp(m) for m in p_lead], "reduced_bases_equal": same_gb}
    if p_lead != pt_lead or not same_gb:
        info["witness"] = {
            "palpha_only": [_fmt_exp(m) for m in p_lead if m not in pt_lead],
            "points_only": [_fmt_exp(m) for m in pt_lead if m not in p_lead],
        }
    if not record("d_leading_ideals_coincide", p_lead == pt_lead and same_gb, **info):
        return finish()

    try:
        m_sat = saturate(n, monomial_qsym, max_degree)
    except SaturationError as exc:
        record("e_qsym_standard_monomials", False, witness=str(exc))
        return finish()
    m_std = standard_monomials(m_sat.basis.compute())
    info = {"standard_monomials": [_fmt_exp(m) for m in m_std], "saturation_degree": m_sat.degree}
    if m_std != p_std:
        info["witness"] = {
            "qsym_only": [_fmt_exp(m) for m in m_std if m not in p_std],
            "palpha_only": [_fmt_exp(m) for m in p_std if m not in m_std],
        }
    if not record("e_qsym_standard_monomials", m_std == p_std, **info):
        return finish()

    grin = {
        "palpha": verify_grin(p_gb),
        "points": verify_grin(pt_gb),
        "qsym": verify_grin(m_sat.basis.compute()),
    }
    record("grin", all(grin.values()), ideals=grin)
    report["dimension"] = target
    return finish()
