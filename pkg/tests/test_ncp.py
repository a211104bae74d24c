import json
import math

import pytest
from hypothesis import given, strategies as st

from qsv.ncp import (
    BallotSequence,
    NoncrossingPartition,
    PrefixInequalityError,
    ballot_sequence,
    catalan,
    chain,
    connected_components,
    cover_closure,
    endpoint_deficit,
    endpoint_sets,
    enumerate_ncp,
    match_endpoints,
    ncp_covers,
    ncp_leq,
)
from qsv.perm import CapExceeded

N = NoncrossingPartition
EXAMPLE = N.parse("n=7; arcs=2-7,3-5,5-6")


def test_parse_render_json():
    assert EXAMPLE.arcs == ((2, 7), (3, 5), (5, 6))
    assert str(EXAMPLE) == "n=7; arcs=2-7,3-5,5-6"
    assert EXAMPLE.to_json() == {"n": 7, "arcs": [[2, 7], [3, 5], [5, 6]]}
    assert N.from_json(json.dumps(EXAMPLE.to_json())) == EXAMPLE
    assert N.parse("n=3; arcs=") == N(3)


@pytest.mark.parametrize("arcs", [
    [(1, 3), (2, 4)],   # crossing
    [(1, 3), (1, 2)],   # shared left endpoint
    [(1, 3), (2, 3)],   # shared right endpoint
    [(2, 2)],
    [(0, 1)],
    [(1, 5)],
])
def test_invalid_diagrams_rejected(arcs):
    with pytest.raises(ValueError):
        N(4, tuple(arcs))


def test_nested_and_chained_arcs_allowed():
    N(4, ((1, 4), (2, 3)))
    N(4, ((1, 2), (2, 3), (3, 4)))


@pytest.mark.parametrize("n", range(0, 11))
def test_catalan_counts(n):
    assert catalan(n) == math.comb(2 * n, n) // (n + 1)
    assert len(enumerate_ncp(n)) == catalan(n)
    assert len(set(enumerate_ncp(n))) == catalan(n)


def test_enumerate_examples():
    assert enumerate_ncp(0) == [N(0)]
    assert set(enumerate_ncp(3)) == {
        N(3), N(3, ((1, 2),)), N(3, ((2, 3),)), N(3, ((1, 3),)), N(3, ((1, 2), (2, 3))),
    }
    assert len(enumerate_ncp(7)) == 429
    with pytest.raises(CapExceeded):
        enumerate_ncp(11)


def test_endpoint_set_examples():
    assert endpoint_sets(EXAMPLE) == ({2, 3, 5}, {5, 6, 7})
    assert endpoint_sets(N(4)) == (set(), set())
    assert endpoint_sets(chain(7)) == (set(range(1, 7)), set(range(2, 8)))


def test_match_endpoints_examples():
    assert match_endpoints(8, {2, 4, 7}, {5, 6, 8}).arcs == ((2, 6), (4, 5), (7, 8))
    assert match_endpoints(5, set(), set()) == N(5)
    with pytest.raises(PrefixInequalityError) as err:
        match_endpoints(3, {2}, {1})
    assert err.value.k == 1
    with pytest.raises(ValueError):
        match_endpoints(3, {1, 2}, {3})


@pytest.mark.parametrize("n", range(0, 9))
def test_match_endpoints_round_trip(n):
    for lam in enumerate_ncp(n):
        assert match_endpoints(n, *endpoint_sets(lam)) == lam
        assert len(lam.plus) == len(lam.minus) == len(lam.arcs)


def test_components_examples():
    assert connected_components(EXAMPLE) == [(1,), (2, 7), (3, 5, 6), (4,)]
    assert connected_components(N(3)) == [(1,), (2,), (3,)]
    assert connected_components(chain(7)) == [tuple(range(1, 8))]


def test_ballot_examples():
    assert str(ballot_sequence(N(3, ((1, 3),)))) == "111---"
    assert str(ballot_sequence(N(3))) == "1-1-1-"
    assert str(ballot_sequence(N(3, ((1, 2), (2, 3))))) == "11-1--"
    assert ballot_sequence(N(3, ((1, 3),))).steps == (1, 1, 1, -1, -1, -1)
    with pytest.raises(ValueError):
        BallotSequence((-1, 1))


@pytest.mark.parametrize("n", range(1, 8))
def test_ballot_prefix_sums_match_deficits(n):
    for lam in enumerate_ncp(n):
        sums = ballot_sequence(lam).prefix_sums()
        for k in range(1, n + 1):
            d_open, d_closed = endpoint_deficit(lam, k)
            assert sums[2 * k - 2] == 1 + 2 * d_open
            assert sums[2 * k - 1] == 2 * d_closed


def test_leq_examples():
    a, b = N(3, ((1, 2),)), N(3, ((2, 3),))
    assert ncp_leq(a, N(3, ((1, 2), (2, 3))))
    assert not ncp_leq(a, b) and not ncp_leq(b, a)
    assert ncp_leq(EXAMPLE, EXAMPLE)
    with pytest.raises(ValueError):
        ncp_leq(N(2), N(3))


def test_cover_examples():
    assert ncp_covers(N(3, ((1, 3),))) == [N(3, ((1, 2), (2, 3)))]
    assert ncp_covers(N(3)) == []
    assert ncp_covers(N(3, ((1, 2), (2, 3)))) == [N(3, ((1, 2),)), N(3, ((2, 3),))]


@pytest.mark.parametrize("n", range(0, 7))
def test_cover_closure_equals_ballot_order(n):
    down = cover_closure(n)
    shapes = enumerate_ncp(n)
    for mu in shapes:
        for lam in shapes:
            assert (lam in down[mu]) == ncp_leq(lam, mu)


@pytest.mark.parametrize("n", range(1, 7))
def test_covers_are_covers(n):
    shapes = enumerate_ncp(n)
    for mu in shapes:
        for lam in ncp_covers(mu):
            assert ncp_leq(lam, mu) and lam != mu
            between = [nu for nu in shapes if nu not in (lam, mu) and ncp_leq(lam, nu) and ncp_leq(nu, mu)]
            assert between == []


@pytest.mark.parametrize("n", range(0, 7))
def test_unique_extremes(n):
    shapes = enumerate_ncp(n)
    bottoms = [b for b in shapes if all(ncp_leq(b, x) for x in shapes)]
    tops = [t for t in shapes if all(ncp_leq(x, t) for x in shapes)]
    assert bottoms == [N(n)]
    # the top is the fully nested diagram (its Q is the longest permutation),
    # not the chain of short arcs
    nested = N(n, tuple((i, n + 1 - i) for i in range(1, n // 2 + 1)))
    assert tops == [nested]
    assert str(ballot_sequence(nested)) == "1" * n + "-" * n


def test_deficit_examples():
    assert endpoint_deficit(chain(7), 4) == (0, 1)
    assert endpoint_deficit(N(5), 3) == (0, 0)
    assert endpoint_deficit(EXAMPLE, 5) == (1, 2)
    with pytest.raises(ValueError):
        endpoint_deficit(EXAMPLE, 8)


@given(st.integers(0, 8).flatmap(lambda n: st.sampled_from(enumerate_ncp(n))))
def test_json_round_trip(lam):
    assert N.from_json(lam.to_json()) == lam
    assert N.parse(str(lam)) == lam
