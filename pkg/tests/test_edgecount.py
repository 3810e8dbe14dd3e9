import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dormant.arith import PrimeLevel, radius_of_svalue
from dormant.edgecount import (
    count,
    count_by_open_values,
    diff_op_count,
    enumerate_numberings,
    independence_check,
    is_balanced,
)
from dormant.errors import DomainError, NotInvertible, ResourceLimit
from dormant.semigraph import alternative_graph, cut_edge, standard_graph
from dormant.triples import enumerate_dagger_C

P32 = PrimeLevel(3, 2)


def closed_form_3_2(g, r):
    if r == 0:
        return 2 ** (g - 1) + 3 ** (g - 1) + 6 ** (g - 1)
    if g == 0:
        return (1 + 2 * 4 ** (r - 1)) // 3
    return 3 ** (g - 1) + 6 ** (g - 1) * 4**r


def test_enumerate_examples():
    assert len(enumerate_numberings(standard_graph(0, 3), P32)) == 11
    assert len(enumerate_numberings(alternative_graph(2, 0), P32)) == 11
    only = enumerate_numberings(standard_graph(0, 3), P32, radii=[1, 1, 1])
    assert [n.values for n in only] == [(0, 0, 0)]


@pytest.mark.parametrize("g,r", [(g, r) for g in range(7) for r in range(7) if 2 * g - 2 + r > 0 and g + r <= 8])
def test_counts_match_closed_forms(g, r):
    c = count(standard_graph(g, r), P32, per_radius=True)
    assert sum(c.per_radius.values()) == c.count
    assert c.count == closed_form_3_2(g, r)


def test_family_vectors():
    # last leg value split for the genus-zero chain and the genus chain with one tail
    u1 = count_by_open_values(standard_graph(0, 3), P32)
    tail = {s: sum(v for k, v in u1.items() if k[-1] == s) for s in (0, 2, 3)}
    assert tail == {0: 3, 2: 5, 3: 3}
    v1 = count_by_open_values(standard_graph(1, 1), P32)
    assert {k[0]: v for k, v in v1.items()} == {0: 3, 2: 1, 3: 1}


@pytest.mark.parametrize("g,r", [(2, 0), (0, 4), (1, 2), (3, 0), (2, 1), (0, 5), (1, 3)])
@pytest.mark.parametrize("pn", [(3, 2), (5, 1)])
def test_independence(g, r, pn):
    assert independence_check(g, r, PrimeLevel(*pn))


@pytest.mark.parametrize("g,r", [(0, 3), (2, 0), (1, 1), (1, 2), (0, 4), (2, 1)])
@pytest.mark.parametrize("pn", [(3, 1), (5, 1), (3, 2)])
def test_dp_equals_enumeration(g, r, pn):
    pp = PrimeLevel(*pn)
    c = standard_graph(g, r)
    nums = enumerate_numberings(c, pp)
    assert count(c, pp).count == len(nums)
    assert all(is_balanced(c, n, pp) for n in nums)
    assert all((2 * a + 1) % pp.p for n in nums for a in n.values)


@given(st.sampled_from([(3, 2), (5, 1), (5, 2)]), st.data())
@settings(max_examples=25)
def test_radius_filter_matches_enumeration(pn, data):
    pp = PrimeLevel(*pn)
    c = standard_graph(1, 2)
    lams = sorted({radius_of_svalue(s, pp).lam for t in enumerate_dagger_C(pp) for s in t})
    radii = [data.draw(st.sampled_from(lams)) for _ in range(2)]
    res = count(c, pp, radii=radii)
    assert res.count == len(enumerate_numberings(c, pp, radii=radii))
    assert count(c, pp, per_radius=True).per_radius.get(tuple(radii), 0) == res.count


def test_bad_radii():
    with pytest.raises(NotInvertible):
        count(standard_graph(0, 3), P32, radii=[1, 3, 1])


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("pn", [(3, 2), (5, 1), (5, 2)])
def test_cut_edge_factorisation(g, pn):
    pp = PrimeLevel(*pn)
    c = standard_graph(g, 0)
    total = count(c, pp).count
    for e in range(c.graph.n_edges):
        pieces = cut_edge(c, e)
        if len(pieces) == 1:
            table = count_by_open_values(pieces[0], pp)
            got = sum(v for k, v in table.items() if k[0] == k[1])
        else:
            left, right = (count_by_open_values(x, pp) for x in pieces)
            got = sum(left.get(k, 0) * right.get(k, 0) for k in left)
        assert got == total


def test_diff_op_count():
    assert diff_op_count(2, P32) == 891
    assert diff_op_count(2, PrimeLevel(3, 1)) == 9
    assert diff_op_count(3, PrimeLevel(3, 1)) == 27 * count(standard_graph(3, 0), PrimeLevel(3, 1)).count
    with pytest.raises(DomainError):
        diff_op_count(1, P32)


def test_resource_limit():
    with pytest.raises(ResourceLimit):
        enumerate_numberings(standard_graph(3, 0), PrimeLevel(5, 2), max_nodes=10)
    with pytest.raises(ResourceLimit):
        count(standard_graph(0, 6), P32, max_states=2)
