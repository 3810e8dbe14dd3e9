import json
from fractions import Fraction
from itertools import permutations, product

import pytest

from dormant.arith import PrimeLevel
from dormant.edgecount import count
from dormant.ehrhart import (
    QuasiPolynomial,
    build_P1,
    build_P2,
    closed_form_03,
    dagger_C_via_lattice,
    dagger_lift,
    edge_count_shared_signs,
    edge_count_via_lattice,
    fit_lattice_counts,
    fit_quasipolynomial,
    in_dilation,
    interpolate,
    lattice_count,
    verify_quasipolynomial,
)
from dormant.errors import NoPeriodFits
from dormant.semigraph import standard_graph
from dormant.triples import SignVector, enumerate_dagger_C, sign_vectors


def test_interpolate():
    assert interpolate([(0, 1), (1, 3), (2, 7)]) == (1, 1, 1)
    assert interpolate([(1, 5)]) == (5,)


def test_fit_detects_period():
    samples = [(m, m * m // 2) for m in range(1, 30)]
    qp = fit_quasipolynomial(samples, 2)
    assert qp.period == 2 and all(qp(m) == v for m, v in samples)
    with pytest.raises(NoPeriodFits):
        fit_quasipolynomial([(m, m**5) for m in range(1, 30)], 2)


def test_quasipolynomial_json_round_trip():
    qp = QuasiPolynomial(2, ((Fraction(0), Fraction(1, 12)), (Fraction(3, 8), Fraction(-1, 3))))
    assert QuasiPolynomial.from_json_obj(json.loads(json.dumps(qp.to_json_obj()))) == qp


def test_level_one_fit():
    a = next(iter(sign_vectors(1)))
    qp = fit_lattice_counts(build_P1(a))
    assert qp.period == 2
    assert qp.constituents[0] == (0, Fraction(1, 12), Fraction(1, 8), Fraction(1, 24))
    assert qp.constituents[1] == (Fraction(3, 8), Fraction(11, 24), Fraction(1, 8), Fraction(1, 24))


@pytest.mark.parametrize("p,N", [(3, 1), (5, 1), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_lattice_identity(p, N):
    pp = PrimeLevel(p, N)
    assert dagger_C_via_lattice(pp) == len(enumerate_dagger_C(pp))


@pytest.mark.parametrize("p,N", [(3, 2), (5, 2), (3, 3)])
def test_lift_lands_in_the_dilations(p, N):
    pp = PrimeLevel(p, N)
    seen = set()
    for t in enumerate_dagger_C(pp):
        a, x1, x2 = dagger_lift(t, pp)
        assert in_dilation(build_P1(a), x1, p - 1)
        assert in_dilation(build_P2(a), x2, p)
        seen.add((tuple(map(tuple, a.entries)), tuple(x1), tuple(x2)))
    assert len(seen) == len(enumerate_dagger_C(pp))


@pytest.mark.parametrize("g,r", [(0, 3), (1, 1), (2, 0), (1, 2), (0, 4)])
@pytest.mark.parametrize("pn", [(3, 1), (5, 1), (3, 2), (5, 2)])
def test_graph_lattice_count_equals_dp(g, r, pn):
    pp = PrimeLevel(*pn)
    c = standard_graph(g, r)
    assert edge_count_via_lattice(c, pp) == count(c, pp).count


def test_shared_sign_reading_disagrees_on_multi_vertex_graphs():
    pp = PrimeLevel(3, 2)
    assert edge_count_shared_signs(standard_graph(2, 0), pp) == 7
    assert count(standard_graph(2, 0), pp).count == 11
    assert edge_count_shared_signs(standard_graph(0, 3), pp) == 11


def _permute_point(x, perm, blocks):
    return tuple(x[3 * b + perm[i]] for b in range(blocks) for i in range(3))


@pytest.mark.parametrize("N", [1, 2])
def test_twisted_permutation_invariance(N):
    m = 3
    for a in sign_vectors(N):
        P2 = build_P2(a)
        for perm in permutations(range(3)):
            b = SignVector(tuple(a.entries[perm[i]] for i in range(3)))
            Q2 = build_P2(b)
            assert lattice_count(P2, m) == lattice_count(Q2, m)
            for x in product(range(m + 1), repeat=3 * (N - 1)):
                assert in_dilation(P2, x, m) == in_dilation(Q2, _permute_point(x, perm, N - 1), m)


def test_untwisted_permutation_invariance_fails_at_level_two():
    # permuting coordinates without permuting the signs changes the strictness pattern
    m = 3
    failures = 0
    for a in sign_vectors(2):
        P2 = build_P2(a)
        for perm in permutations(range(3)):
            for x in product(range(m + 1), repeat=3):
                failures += in_dilation(P2, x, m) != in_dilation(P2, _permute_point(x, perm, 1), m)
    assert failures > 0


def test_level_one_permutation_invariance_of_points():
    a = next(iter(sign_vectors(1)))
    P1 = build_P1(a)
    for m in range(1, 7):
        for x in [(i, j, k) for i in range(m + 1) for j in range(m + 1) for k in range(m + 1)]:
            verdicts = {in_dilation(P1, tuple(x[i] for i in perm), m) for perm in permutations(range(3))}
            assert len(verdicts) == 1


def test_verify_three_legs_level_two():
    rep = verify_quasipolynomial(0, 3, [3, 5, 7, 11], 2, reference=closed_form_03)
    assert rep["pass"] and rep["period"] % 2 == 0 and rep["degree"] == 6


def test_verify_one_loop():
    rep = verify_quasipolynomial(1, 1, [3, 5, 7], 1)
    assert rep["pass"] and rep["degree"] == 2
    values = [int(Fraction(row["H"])) for row in rep["primes"]]
    assert values == [1, 3, 6]
