"""Balanced edge numberings of trivalent clutching data.

``count`` contracts vertices one at a time in a greedy min-frontier order,
keeping a table from the values on frontier edges to big-integer counts.
``enumerate_numberings`` walks the same order depth first.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .arith import PrimeLevel, RadiusClass, radius_of_svalue
from .errors import DomainError, ResourceLimit
from .semigraph import ClutchingData, alternative_graph, graph_type, standard_graph, validate
from .triples import ExponentTriple, enumerate_dagger_C

MAX_STATES = 5_000_000
MAX_NODES = 10**9


@dataclass(frozen=True, order=True)
class EdgeNumbering:
    values: tuple[int, ...]  # indexed by edge id

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.values))


@dataclass
class CountResult:
    count: int
    per_radius: dict[tuple[int, ...], int] | None = field(default=None)


class TripleIndex:
    """Dagger-C triples grouped by the values at a chosen set of positions."""

    def __init__(self, triples: Sequence[ExponentTriple]):
        self.triples = tuple(triples)
        self._groups: dict[tuple, dict[tuple[int, ...], list[ExponentTriple]]] = {}

    def matching(self, fixed: tuple[Optional[int], ...], equal: tuple[tuple[int, int], ...] = ()):
        mask = tuple(i for i, x in enumerate(fixed) if x is not None)
        key = (mask, equal)
        groups = self._groups.get(key)
        if groups is None:
            groups = defaultdict(list)
            for t in self.triples:
                if all(t[i] == t[j] for i, j in equal):
                    groups[tuple(t[i] for i in mask)].append(t)
            groups = dict(groups)
            self._groups[key] = groups
        return groups.get(tuple(fixed[i] for i in mask), ())


@lru_cache(maxsize=None)
def triple_index(pp: PrimeLevel) -> TripleIndex:
    return TripleIndex(enumerate_dagger_C(pp, budget=max(pp.q, 343)))


def _check(c: ClutchingData) -> None:
    problems = validate(c)
    if problems:
        raise DomainError("; ".join(problems))


def _vertex_edges(c: ClutchingData, v: int) -> tuple[int, int, int]:
    return tuple(e for e, _ in c.vertex_branches(v))  # type: ignore[return-value]


def _loop_pairs(edges: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(3) for j in range(i + 1, 3) if edges[i] == edges[j])


def elimination_order(c: ClutchingData, keep_open: bool = False) -> list[int]:
    """Greedy order: each step takes the vertex giving the smallest next frontier."""
    g = c.graph
    remaining = {e: sum(1 for x in pair if x is not None) for e, pair in enumerate(g.ends)}
    opens = set(c.open_edges)
    seen: set[int] = set()
    todo = list(g.vertices)
    order: list[int] = []

    def frontier_after(v: int) -> int:
        rem = dict(remaining)
        for e in _vertex_edges(c, v):
            rem[e] -= 1
        live = seen | set(_vertex_edges(c, v))
        return sum(1 for e in live if rem[e] > 0 or (keep_open and e in opens))

    while todo:
        v = min(todo, key=lambda x: (frontier_after(x), not (set(_vertex_edges(c, x)) & seen), x))
        for e in _vertex_edges(c, v):
            remaining[e] -= 1
        seen |= set(_vertex_edges(c, v))
        seen = {e for e in seen if remaining[e] > 0 or (keep_open and e in opens)}
        todo.remove(v)
        order.append(v)
    return order


def _allowed_values(
    c: ClutchingData, pp: PrimeLevel, radii: Sequence[RadiusClass | int] | None
) -> dict[int, frozenset[int]] | None:
    if radii is None:
        return None
    if len(radii) != len(c.open_order):
        raise DomainError(f"expected {len(c.open_order)} radii, got {len(radii)}")
    alphabet = sorted({s for t in triple_index(pp).triples for s in t})
    allowed: dict[int, frozenset[int]] = {}
    for e, rho in zip(c.open_edges, radii):
        lam = rho.lam if isinstance(rho, RadiusClass) else RadiusClass.checked(int(rho), pp).lam
        vals = frozenset(s for s in alphabet if radius_of_svalue(s, pp).lam == lam)
        allowed[e] = allowed.get(e, vals) & vals
    return allowed


def _contract(
    c: ClutchingData,
    pp: PrimeLevel,
    allowed: dict[int, frozenset[int]] | None,
    keep_open: bool,
    max_states: int,
) -> dict[tuple[int, ...], int]:
    """Table keyed by the values of the open edges (in open order) if keep_open, else by ()."""
    index = triple_index(pp)
    g = c.graph
    opens = set(c.open_edges)
    remaining = {e: sum(1 for x in pair if x is not None) for e, pair in enumerate(g.ends)}
    frontier: list[int] = []
    table: dict[tuple[int, ...], int] = {(): 1}
    for v in elimination_order(c, keep_open):
        edges = _vertex_edges(c, v)
        equal = _loop_pairs(edges)
        for e in edges:
            remaining[e] -= 1
        pos = {e: i for i, e in enumerate(frontier)}
        fresh = [e for e in dict.fromkeys(edges) if e not in pos]
        live = frontier + fresh
        keep = [e for e in live if remaining[e] > 0 or (keep_open and e in opens)]
        fresh_slot = {e: edges.index(e) for e in fresh}
        checks = [(fresh_slot[e], allowed[e]) for e in fresh if allowed and e in allowed]
        key_src = [("old", pos[e]) if e in pos else ("new", fresh_slot[e]) for e in keep]
        new_table: dict[tuple[int, ...], int] = defaultdict(int)
        for key, cnt in table.items():
            fixed = tuple(key[pos[e]] if e in pos else None for e in edges)
            for t in index.matching(fixed, equal):
                if checks and any(t[slot] not in vals for slot, vals in checks):
                    continue
                nk = tuple(key[i] if src == "old" else t[i] for src, i in key_src)
                new_table[nk] += cnt
        if len(new_table) > max_states:
            raise ResourceLimit(f"frontier table has {len(new_table)} states (limit {max_states})")
        table = new_table
        frontier = keep
    if not keep_open:
        return {(): sum(table.values())}
    slot = {e: i for i, e in enumerate(frontier)}
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for key, cnt in table.items():
        out[tuple(key[slot[e]] for e in c.open_edges)] += cnt
    return dict(out)


def count_by_open_values(c: ClutchingData, pp: PrimeLevel, max_states: int = MAX_STATES) -> dict[tuple[int, ...], int]:
    """Counts keyed by the s-values on the open edges, in open order."""
    _check(c)
    return _contract(c, pp, None, True, max_states)


def count(
    c: ClutchingData,
    pp: PrimeLevel,
    radii: Sequence[RadiusClass | int] | None = None,
    per_radius: bool = False,
    max_states: int = MAX_STATES,
) -> CountResult:
    _check(c)
    allowed = _allowed_values(c, pp, radii)
    if not per_radius:
        return CountResult(_contract(c, pp, allowed, False, max_states)[()])
    table = _contract(c, pp, allowed, True, max_states)
    by_radius: dict[tuple[int, ...], int] = defaultdict(int)
    for values, cnt in table.items():
        by_radius[tuple(radius_of_svalue(s, pp).lam for s in values)] += cnt
    return CountResult(sum(table.values()), dict(sorted(by_radius.items())))


def enumerate_numberings(
    c: ClutchingData,
    pp: PrimeLevel,
    radii: Sequence[RadiusClass | int] | None = None,
    max_nodes: int = MAX_NODES,
) -> list[EdgeNumbering]:
    _check(c)
    allowed = _allowed_values(c, pp, radii) or {}
    index = triple_index(pp)
    order = elimination_order(c)
    plan = [(_vertex_edges(c, v), _loop_pairs(_vertex_edges(c, v))) for v in order]
    n_edges = c.graph.n_edges
    assign: list[Optional[int]] = [None] * n_edges
    out: list[EdgeNumbering] = []
    nodes = 0

    def walk(depth: int) -> None:
        nonlocal nodes
        if depth == len(plan):
            out.append(EdgeNumbering(tuple(assign)))  # type: ignore[arg-type]
            return
        edges, equal = plan[depth]
        fixed = tuple(assign[e] for e in edges)
        fresh = [i for i, e in enumerate(edges) if assign[e] is None]
        for t in index.matching(fixed, equal):
            nodes += 1
            if nodes > max_nodes:
                raise ResourceLimit(f"search exceeded {max_nodes} nodes")
            if any(edges[i] in allowed and t[i] not in allowed[edges[i]] for i in fresh):
                continue
            for i in fresh:
                assign[edges[i]] = t[i]
            walk(depth + 1)
            for i in fresh:
                assign[edges[i]] = None

    walk(0)
    return sorted(out)


def independence_check(g: int, r: int, pp: PrimeLevel) -> bool:
    a = count(standard_graph(g, r), pp, per_radius=True)
    b = count(alternative_graph(g, r), pp, per_radius=True)
    return a.count == b.count and a.per_radius == b.per_radius


def diff_op_count(g: int, pp: PrimeLevel) -> int:
    """Number of second-order operators with a full set of root functions, p^(gN) times the edge count."""
    if g <= 1:
        raise DomainError("diff_op_count needs genus g > 1")
    return pp.p ** (g * pp.N) * count(standard_graph(g, 0), pp).count


def is_balanced(c: ClutchingData, numbering: EdgeNumbering, pp: PrimeLevel) -> bool:
    members = set(triple_index(pp).triples)
    return all(
        tuple(numbering.values[e] for e in _vertex_edges(c, v)) in members for v in c.graph.vertices
    )


def type_of(c: ClutchingData) -> tuple[int, int]:
    return graph_type(c)
