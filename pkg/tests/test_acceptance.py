"""The twelve acceptance criteria, one marked test group per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
PASS/FAIL per criterion.
"""

import subprocess
import sys
import time
from itertools import combinations
from math import comb

import pytest

from qsv.classes import (
    enumerate_qsv,
    excedance_class_of,
    partition_into_classes,
)
from qsv.groebner import (
    point_vanishing_ideal,
    saturate_qsym_generators,
    saturate_vanishing_generators,
    verify_grin,
    verify_theorem_vanishingQSV,
)
from qsv.ncp import catalan, enumerate_ncp
from qsv.perm import Permutation, all_permutations
from qsv.qpoly import Composition, evaluate_at_permutation, vanishing_poly
from qsv.tl import basis_check, random_section_basis
from qsv.verify import (
    verify_interval,
    verify_quotient_order,
    verify_tl_basis,
    verify_tl_sections,
    verify_vanishing,
)

criterion = pytest.mark.criterion

DISPLAYED_SECTION = [
    "4312", "4231", "4213", "3142", "1432", "4123", "3214",
    "3124", "2143", "1423", "2134", "1324", "1243", "1234",
]


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def check(name, report):
    return next(c for c in report["checks"] if c["name"] == name)


def brute_avoids_321(word):
    return not any(a > b > c for a, b, c in combinations(word, 3))


@criterion(1, "Catalan counts for n = 0..7")
def test_catalan_counts():
    with Timer(10):
        for n in range(8):
            closed = comb(2 * n, n) // (n + 1)
            assert catalan(n) == closed
            assert len(enumerate_ncp(n)) == closed
            assert len(enumerate_qsv(n)) == closed
            assert len(partition_into_classes(n)) == closed
            assert sum(1 for w in all_permutations(n) if brute_avoids_321(w.word)) == closed
        assert catalan(7) == 429


@criterion(2, "excedance classes are Bruhat intervals, n = 3..6")
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_classes_are_intervals(n):
    with Timer(120):
        report = verify_interval(n)
    assert report["pass"], report


@criterion(3, "induced class order equals ballot order, n = 3..5")
def test_quotient_order():
    with Timer(60):
        for n in (3, 4, 5):
            report = verify_quotient_order(n)
            for name in ("induced_equals_ballot", "antisymmetric", "transitive"):
                assert check(name, report)["pass"], (n, check(name, report))


@criterion(4, "three orders on QSV_n agree, n <= 6")
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_qsv_order_criteria(n):
    report = verify_quotient_order(n)
    assert check("qsv_order_criteria_agree", report)["pass"], report


@criterion(5, "QSV_n maps to a basis of TL_n(2), n = 3..6")
def test_tl_basis_rank():
    with Timer(120):
        for n in (3, 4, 5, 6):
            c = check("qsv_rank", verify_tl_basis(n, triangular_cap=0))
            assert c["pass"] and c["rank"] == catalan(n), c
    assert catalan(6) == 132


@criterion(6, "every section of the classes maps to a basis")
def test_sections_exhaustive_n3():
    report = verify_tl_sections(3)
    c = check("sections_are_bases", report)
    assert c["mode"] == "exhaustive" and c["sections"] == 2
    assert report["pass"]


@criterion(6, "every section of the classes maps to a basis")
@pytest.mark.parametrize("n", [4, 5])
def test_sections_seeded(n):
    for seed in range(500):
        section, ok = random_section_basis(n, seed)
        assert ok, (seed, [str(w) for w in section])


@criterion(6, "every section of the classes maps to a basis")
def test_displayed_section():
    perms = [Permutation.parse(s) for s in DISPLAYED_SECTION]
    assert len({excedance_class_of(w) for w in perms}) == 14
    assert basis_check(perms)


@criterion(7, "normal forms are unitriangular, n <= 5")
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_triangularity(n):
    c = check("unitriangular", verify_tl_basis(n))
    assert c["pass"], c


@criterion(8, "P_alpha vanishes on QSV_n, |alpha| <= 6, n <= 6")
def test_vanishing():
    with Timer(180):
        for n in range(1, 7):
            report = verify_vanishing(n, max_degree=6)
            assert report["pass"], report


@criterion(9, "vanishing ideal of QSV_n, n = 2..4")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_vanishing_ideal(n):
    with Timer(300):
        report = verify_theorem_vanishingQSV(n)
    assert report["pass"], report
    for name in ("b_palpha_dimension", "c_points_dimension",
                 "d_leading_ideals_coincide", "e_qsym_standard_monomials"):
        assert check(name, report)["pass"]
    assert report["dimension"] == catalan(n)


@criterion(10, "in(gr I) = in(I) on the ideals of criterion 9")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_grin(n):
    points = [w.word for w in enumerate_qsv(n)]
    ideals = [
        saturate_vanishing_generators(n).basis.compute(),
        saturate_qsym_generators(n).basis.compute(),
        point_vanishing_ideal(points).compute(),
    ]
    for G in ideals:
        assert verify_grin(G)


@criterion(11, "P_(2,1) at 231 is -2")
def test_negative_control():
    value = evaluate_at_permutation(vanishing_poly(Composition((2, 1)), 3), Permutation.parse("231"))
    assert value == -2


@criterion(12, "verify subcommands are deterministic")
@pytest.mark.parametrize("theorem", ["interval", "quotient-order", "tl-basis", "tl-sections", "vanishing", "ideal"])
def test_determinism(theorem):
    argv = [sys.executable, "-m", "qsv", "verify", theorem, "--n", "4"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert first
