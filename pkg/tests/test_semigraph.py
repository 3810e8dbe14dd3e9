import json

import pytest

from dormant.errors import DomainError, ValidationError
from dormant.semigraph import (
    ClutchingData,
    SemiGraph,
    alternative_graph,
    cut_edge,
    from_json,
    glue,
    graph_type,
    standard_graph,
    to_json,
    validate,
)

STAR = ClutchingData(SemiGraph((0,), ((0, None), (0, None), (0, None))), (((0, 0), (1, 0), (2, 0)),), ((0, 1), (1, 1), (2, 1)))
THETA = ClutchingData(
    SemiGraph((0, 1), ((0, 1), (0, 1), (0, 1))),
    (((0, 0), (1, 0), (2, 0)), ((0, 1), (1, 1), (2, 1))),
    (),
)
STABLE = [(g, r) for g in range(7) for r in range(7) if 2 * g - 2 + r > 0]


def test_graph_type_examples():
    assert graph_type(STAR) == (0, 3)
    assert graph_type(THETA) == (2, 0)
    tadpole = SemiGraph((0,), ((0, 0), (0, None)))
    assert graph_type(tadpole) == (1, 1)


def test_validate_examples():
    assert validate(THETA) == []
    bent = SemiGraph((0, 1), ((0, 1), (0, 1)))
    with pytest.raises(ValidationError) as info:
        graph_type(bent)
    assert any("not trivalent" in v for v in info.value.violations)
    two = SemiGraph((0, 1, 2, 3), ((0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)))
    c = ClutchingData(two, ((), (), (), ()), ())
    assert "not connected" in validate(c)
    broken = ClutchingData(THETA.graph, (((0, 0), (0, 0), (2, 0)), THETA.branch_order[1]), ())
    assert any("bijection" in v for v in validate(broken))


@pytest.mark.parametrize("g,r", STABLE)
def test_standard_graph_counts(g, r):
    c = standard_graph(g, r)
    assert validate(c) == []
    assert graph_type(c) == (g, r)
    assert len(c.graph.vertices) == 2 * g - 2 + r
    assert c.graph.n_edges == 3 * g - 3 + 2 * r
    c2 = alternative_graph(g, r)
    assert validate(c2) == [] and graph_type(c2) == (g, r)


def test_standard_small_shapes():
    assert standard_graph(0, 3).graph.n_edges == 3 and len(standard_graph(0, 3).graph.vertices) == 1
    loops = lambda c: sum(1 for u, w in c.graph.ends if u is not None and u == w)  # noqa: E731
    assert loops(standard_graph(2, 0)) == 2
    assert loops(alternative_graph(2, 0)) == 0
    assert loops(standard_graph(1, 2)) == 1
    with pytest.raises(DomainError):
        standard_graph(1, 0)
    with pytest.raises(DomainError):
        standard_graph(0, 2)


def test_glue_types():
    assert graph_type(glue(STAR, 0, standard_graph(0, 3), 0)) == (0, 4)
    assert graph_type(glue(STAR, 0, STAR, 1)) == (1, 1)
    a, b = standard_graph(1, 2), standard_graph(2, 1)
    assert graph_type(glue(a, 1, b, 0)) == (3, 1)
    with pytest.raises(DomainError):
        glue(STAR, 0, STAR, 0 + 5)
    with pytest.raises(DomainError):
        glue(STAR, 1, STAR, 1)


def test_loop_glue_needs_distinct_legs():
    c = standard_graph(0, 4)
    with pytest.raises(DomainError):
        glue(c, 2, c, 2)
    assert graph_type(glue(c, 0, c, 3)) == (1, 2)


@pytest.mark.parametrize("g,r", [(2, 0), (1, 2), (0, 5), (3, 1)])
def test_cut_then_glue_restores_type(g, r):
    c = standard_graph(g, r)
    for e, (u, w) in enumerate(c.graph.ends):
        if u is None or w is None:
            continue
        pieces = cut_edge(c, e)
        if len(pieces) == 1:
            (p,) = pieces
            k = len(p.open_order)
            assert graph_type(p) == (g - 1, r + 2)
            assert graph_type(glue(p, k - 2, p, k - 1)) == (g, r)
        else:
            left, right = pieces
            (g1, r1), (g2, r2) = graph_type(left), graph_type(right)
            assert (g1 + g2, r1 + r2 - 2) == (g, r)


@pytest.mark.parametrize("g,r", [(0, 3), (2, 0), (1, 2), (2, 3)])
def test_json_round_trip(g, r):
    c = standard_graph(g, r)
    assert from_json(to_json(c)) == c


def test_json_errors():
    with pytest.raises(ValidationError) as info:
        from_json("{not json")
    assert "line 1" in str(info.value)
    obj = json.loads(to_json(THETA))
    obj["edges"][2]["id"] = 7
    with pytest.raises(ValidationError) as info:
        from_json(json.dumps(obj))
    assert "$.edges[2].id" in str(info.value)
    obj = json.loads(to_json(STAR))
    obj["edges"][0]["branches"][1] = {"open": 1}
    with pytest.raises(ValidationError):
        from_json(json.dumps(obj))
    bent = {"vertices": [0, 1], "edges": [{"id": 0, "branches": [{"vertex": 0}, {"vertex": 1}]}], "open_order": []}
    with pytest.raises(ValidationError):
        from_json(json.dumps(bent))
