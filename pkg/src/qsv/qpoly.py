"""
Compositions, sparse rational polynomials, and quasisymmetric polynomials.

`monomial_qsym` builds ``M_alpha``; `vanishing_poly` builds its inhomogeneous
lift ``P_alpha`` whose top-degree component is ``M_alpha`` and which vanishes
on every permutation of ``QSV_n`` (read as a point of ``Q^n``).

>>> print(vanishing_poly(Composition((1,)), 1))
x1 - 1
>>> evaluate_at_permutation(vanishing_poly(Composition((2, 1)), 3), Permutation.parse("231"))
-2
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Mapping, Sequence

from .perm import Permutation

__all__ = [
    "Composition", "Polynomial", "compositions", "compositions_up_to",
    "coarsenings", "monomial_qsym", "vanishing_poly", "top_component",
    "evaluate_at_permutation", "single_cycle_expansion", "grlex_key",
    "format_rational", "DEFAULT_DEGREE_BOUND",
]

# shared by the vanishing sweeps here and the saturation loop in groebner
DEFAULT_DEGREE_BOUND = 6

Scalar = int | Fraction
Exponent = tuple[int, ...]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Scalar) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    """Sort key for graded-lex with ``x1 > x2 > ... > xn``."""
    return sum(exp), exp


@dataclass(frozen=True, order=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("empty composition")
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")

    @classmethod
    def parse(cls, text: str) -> Composition:
        return cls(tuple(int(tok) for tok in text.strip().strip("()").split(",") if tok.strip()))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def compositions(d: int, max_len: int | None = None) -> list[Composition]:
    """Compositions of ``d`` with at most ``max_len`` parts, lexicographically."""
    if d < 1:
        return []
    out = []
    for cuts in range(d):
        for chosen in combinations(range(1, d), cuts):
            bounds = (0,) + chosen + (d,)
            parts = tuple(b - a for a, b in zip(bounds, bounds[1:]))
            if max_len is None or len(parts) <= max_len:
                out.append(Composition(parts))
    return sorted(out)


def compositions_up_to(degree: int, max_len: int | None = None) -> list[Composition]:
    return [a for d in range(1, degree + 1) for a in compositions(d, max_len)]


def coarsenings(alpha: Composition) -> list[tuple[Composition, tuple[int, ...]]]:
    """All ``beta`` coarsening ``alpha``, with split indices
    ``f_1 = 1 < f_2 < ... < f_{l+1} = len(alpha) + 1`` (1-based) such that
    ``beta_i = alpha_{f_i} + ... + alpha_{f_{i+1} - 1}``."""
    k = len(alpha)
    parts = alpha.parts
    out = []
    for mask in product((False, True), repeat=k - 1):
        f = (1,) + tuple(s + 2 for s, keep in enumerate(mask) if keep) + (k + 1,)
        beta = tuple(sum(parts[a - 1:b - 1]) for a, b in zip(f, f[1:]))
        out.append((Composition(beta), f))
    return out


class Polynomial:
    """Sparse polynomial in ``x1..xn`` with exact rational coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.n = n
        clean: dict[Exponent, Scalar] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for n = {n}")
            c = _norm(c if isinstance(c, int) else Fraction(c))
            if c:
                clean[exp] = c
        self._terms = clean

    @classmethod
    def constant(cls, n: int, c: Scalar) -> Polynomial:
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> Polynomial:
        if not 1 <= i <= n:
            raise ValueError(f"x{i} is not a variable of a ring in {n} variables")
        return cls(n, {tuple(int(j == i - 1) for j in range(n)): 1})

    @classmethod
    def monomial(cls, exp: Exponent, c: Scalar = 1) -> Polynomial:
        return cls(len(exp), {tuple(exp): c})

    @property
    def terms(self) -> dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Scalar]]:
        """Terms from the graded-lex largest down."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def coefficient(self, exp: Exponent) -> Scalar:
        return self._terms.get(tuple(exp), 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def _coerce(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        return other

    def __add__(self, other: Polynomial | Scalar) -> Polynomial:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Polynomial | Scalar) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.n, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.n} variables")
        total: Scalar = 0
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x ** e
            total += term
        return _norm(total) if isinstance(total, Fraction) else total

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Polynomial:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            mag = abs(Fraction(c))
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        head = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in pieces[1:]])

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {self})"


def _check_length(alpha: Composition, n: int) -> None:
    if len(alpha) > n:
        raise ValueError(f"composition {alpha} has more than {n} parts")


def monomial_qsym(alpha: Composition, n: int) -> Polynomial:
    """``M_alpha``: sum over ``i_1 < ... < i_k`` of ``prod x_{i_j}^{alpha_j}``."""
    _check_length(alpha, n)
    terms = {}
    for idx in combinations(range(n), len(alpha)):
        exp = [0] * n
        for i, a in zip(idx, alpha.parts):
            exp[i] = a
        terms[tuple(exp)] = 1
    return Polynomial(n, terms)


def vanishing_poly(alpha: Composition, n: int) -> Polynomial:
    """``P_alpha`` in ``n`` variables.

    For each coarsening ``beta`` with split indices ``f`` and each
    ``i_1 < ... < i_l``, the summand is the product over ``j`` of
    ``(x_{i_j}^{a} - i_j^{a})`` with ``a = alpha_{f_j}``, times
    ``-(i_j^{alpha_s})`` for each absorbed part ``f_j < s < f_{j+1}``.
    """
    _check_length(alpha, n)
    parts = alpha.parts
    terms: dict[Exponent, Scalar] = {}
    for beta, f in coarsenings(alpha):
        ell = len(beta)
        for idx in combinations(range(1, n + 1), ell):
            heads, consts = [], []
            for j, i in enumerate(idx):
                head = parts[f[j] - 1]
                scale = 1
                for s in range(f[j] + 1, f[j + 1]):
                    scale *= -(i ** parts[s - 1])
                heads.append(head)
                consts.append(scale)
            base = 1
            for c in consts:
                base *= c
            # expand prod_j (x_i^a - i^a) by choosing a side in each factor
            for pick in product((True, False), repeat=ell):
                coef = base
                exp = [0] * n
                for use_x, i, a in zip(pick, idx, heads):
                    if use_x:
                        exp[i - 1] = a
                    else:
                        coef *= -(i ** a)
                key = tuple(exp)
                terms[key] = terms.get(key, 0) + coef
    return Polynomial(n, terms)


def top_component(f: Polynomial) -> Polynomial:
    """``h(f)``: the terms of maximal total degree."""
    d = f.degree()
    return Polynomial(f.n, {e: c for e, c in f.terms.items() if sum(e) == d})


def evaluate_at_permutation(f: Polynomial, sigma: Permutation) -> Scalar:
    """``f(sigma_1, ..., sigma_n)``; ``f`` may use fewer variables than ``n``."""
    if f.n > sigma.n:
        raise ValueError(f"polynomial in {f.n} variables evaluated at a point of S_{sigma.n}")
    return f.evaluate(sigma.word[: f.n])


def single_cycle_expansion(alpha: Composition, sigma: Permutation) -> int:
    """``P_alpha(sigma)`` computed directly from the cycle of ``sigma``.

    With the cycle ``a_1 < ... < a_m`` and ``sigma(a_i) = a_{i-1}`` (indices
    mod ``m``), the value is the sum over ``1 <= j_1 <= ... <= j_k <= m`` and
    ``eps`` in ``{0,1}^k`` with ``eps_i = 1`` whenever ``j_{i-1} = j_i`` of
    ``(-1)^{sum eps} prod_i a_{j_i - 1 + eps_i}^{alpha_i}``.
    """
    nontrivial = [c for c in sigma.cycles() if len(c) > 1]
    if len(nontrivial) > 1:
        raise ValueError(f"{sigma} has {len(nontrivial)} nontrivial cycles")
    if not nontrivial:
        return 0
    a = sorted(nontrivial[0])
    m = len(a)
    for t in range(m):
        if sigma(a[t]) != a[t - 1]:
            raise ValueError(f"{sigma} is not in QSV: its cycle does not decrease")
    k = len(alpha)
    total = 0

    def z(j: int, eps: int) -> int:
        # a_{j - 1 + eps} with 1-based j and a_0 = a_m
        return a[(j - 2 + eps) % m]

    def walk(pos: int, prev_j: int, sign: int, acc: int) -> None:
        nonlocal total
        if pos == k:
            total += sign * acc
            return
        for j in range(max(prev_j, 1), m + 1):
            options = (1,) if j == prev_j else (0, 1)
            for eps in options:
                walk(pos + 1, j, -sign if eps else sign, acc * z(j, eps) ** alpha.parts[pos])

    walk(0, 0, 1, 1)
    return total
