"""Trivalent semi-graphs with open edges, and clutching data over them.

A branch is the pair (edge_id, side) with side in {0, 1}. Each branch ends at a
vertex or is open (``OPEN``). Loops are edges whose two branches meet the same
vertex.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Optional

from .errors import DomainError, ValidationError

OPEN = None
Branch = tuple[int, int]


@dataclass(frozen=True)
class SemiGraph:
    vertices: tuple[int, ...]
    ends: tuple[tuple[Optional[int], Optional[int]], ...]  # edge id -> (end of side 0, end of side 1)

    @property
    def incidence(self) -> dict[Branch, Optional[int]]:
        return {(e, k): v for e, pair in enumerate(self.ends) for k, v in enumerate(pair)}

    def branches_at(self, v: int) -> list[Branch]:
        return [(e, k) for e, pair in enumerate(self.ends) for k, end in enumerate(pair) if end == v]

    def open_branches(self) -> list[Branch]:
        return [(e, k) for e, pair in enumerate(self.ends) for k, end in enumerate(pair) if end is OPEN]

    @property
    def n_edges(self) -> int:
        return len(self.ends)


@dataclass(frozen=True)
class ClutchingData:
    graph: SemiGraph
    branch_order: tuple[tuple[Branch, Branch, Branch], ...]  # indexed by position of v in graph.vertices
    open_order: tuple[Branch, ...]

    def vertex_branches(self, v: int) -> tuple[Branch, Branch, Branch]:
        return self.branch_order[self.graph.vertices.index(v)]

    @property
    def open_edges(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.open_order)


def _violations_graph(g: SemiGraph) -> list[str]:
    out: list[str] = []
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        out.append("duplicate vertex ids")
    for e, pair in enumerate(g.ends):
        if len(pair) != 2:
            out.append(f"edge {e} does not have exactly two branches")
            continue
        if pair[0] is OPEN and pair[1] is OPEN:
            out.append(f"edge {e} has both branches open")
        for end in pair:
            if end is not OPEN and end not in vset:
                out.append(f"edge {e} references unknown vertex {end}")
    return out


def _connected(g: SemiGraph) -> bool:
    if not g.vertices:
        return False
    adj: dict[int, set[int]] = defaultdict(set)
    for u, w in g.ends:
        if u is not OPEN and w is not OPEN:
            adj[u].add(w)
            adj[w].add(u)
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def _violations_structure(g: SemiGraph) -> list[str]:
    out = _violations_graph(g)
    if out:
        return out
    for v in g.vertices:
        if len(g.branches_at(v)) != 3:
            out.append(f"vertex {v} not trivalent ({len(g.branches_at(v))} branches)")
    if not _connected(g):
        out.append("not connected")
    return out


def validate(c: ClutchingData) -> list[str]:
    """Every violation found; an empty list means the data is valid."""
    g = c.graph
    out = _violations_structure(g)
    if out:
        return out
    if len(c.branch_order) != len(g.vertices):
        out.append("branch_order must have one entry per vertex")
    else:
        for v, order in zip(g.vertices, c.branch_order):
            if sorted(order) != sorted(g.branches_at(v)):
                out.append(f"branch order at vertex {v} is not a bijection onto its branches")
    if sorted(c.open_order) != sorted(g.open_branches()):
        out.append("open_order is not a bijection onto the open branches")
    return out


def graph_type(g: SemiGraph | ClutchingData) -> tuple[int, int]:
    graph = g.graph if isinstance(g, ClutchingData) else g
    problems = _violations_structure(graph)
    if problems:
        raise ValidationError("; ".join(problems), problems)
    r = len(graph.open_branches())
    return 1 - len(graph.vertices) + graph.n_edges - r, r


class _Builder:
    def __init__(self) -> None:
        self.n_vertices = 0
        self.ends: list[tuple[Optional[int], Optional[int]]] = []
        self.opens: list[int] = []

    def vertex(self) -> int:
        self.n_vertices += 1
        return self.n_vertices - 1

    def edge(self, u: Optional[int], w: Optional[int]) -> int:
        self.ends.append((u, w))
        if w is OPEN:
            self.opens.append(len(self.ends) - 1)
        return len(self.ends) - 1

    def lollipop(self) -> int:
        u = self.vertex()
        self.edge(u, u)
        return u

    def hang(self, kind: str, w: int) -> None:
        """Attach a leg or a lollipop to vertex w."""
        if kind == "leg":
            self.edge(w, OPEN)
        else:
            self.edge(w, self.lollipop())

    def build(self, open_rank: list[int] | None = None) -> ClutchingData:
        graph = SemiGraph(tuple(range(self.n_vertices)), tuple(self.ends))
        order = tuple(tuple(graph.branches_at(v)) for v in graph.vertices)
        opens = [(e, 1) for e in self.opens]
        if open_rank is not None:
            opens = [opens[i] for i in open_rank]
        cd = ClutchingData(graph, order, tuple(opens))  # type: ignore[arg-type]
        problems = validate(cd)
        if problems:
            raise AssertionError(problems)
        return cd


def _check_stable(g: int, r: int) -> None:
    if g < 0 or r < 0 or 2 * g - 2 + r <= 0:
        raise DomainError(f"type (g,r)=({g},{r}) is not stable")


def _caterpillar(kinds: list[str], open_rank: list[int] | None = None) -> ClutchingData:
    b = _Builder()
    L = len(kinds)
    if L == 2:
        u = b.lollipop()
        if kinds[1] == "leg":
            b.edge(u, OPEN)
        else:
            b.edge(u, b.lollipop())
        return b.build(open_rank)
    spine = [b.vertex() for _ in range(L - 2)]
    if L == 3:
        for k in kinds:
            b.hang(k, spine[0])
        return b.build(open_rank)
    b.hang(kinds[0], spine[0])
    b.hang(kinds[1], spine[0])
    for i in range(2, L - 2):
        b.hang(kinds[i], spine[i - 1])
    b.hang(kinds[L - 2], spine[-1])
    b.hang(kinds[L - 1], spine[-1])
    for i in range(L - 3):
        b.edge(spine[i], spine[i + 1])
    return b.build(open_rank)


def standard_graph(g: int, r: int) -> ClutchingData:
    """Caterpillar with g lollipops followed by r legs.

    Two pendants are joined directly (dumbbell for (2,0), loop plus leg for
    (1,1)); three or more hang off a path of L-2 spine vertices.
    """
    _check_stable(g, r)
    return _caterpillar(["loop"] * g + ["leg"] * r)


def _ring(n_loops: int, n_legs: int) -> ClutchingData:
    b = _Builder()
    m = n_loops + n_legs
    ring = [b.vertex() for _ in range(m)]
    for i in range(m):
        b.edge(ring[i], ring[(i + 1) % m])
    for i, v in enumerate(ring):
        b.hang("loop" if i < n_loops else "leg", v)
    return b.build()


def _relabelled(c: ClutchingData) -> ClutchingData:
    """Same graph with vertex and edge numbering reversed."""
    g = c.graph
    nv, ne = len(g.vertices), g.n_edges
    vmap = {v: nv - 1 - i for i, v in enumerate(g.vertices)}
    ends = [None] * ne
    for e, (u, w) in enumerate(g.ends):
        ends[ne - 1 - e] = tuple(OPEN if x is OPEN else vmap[x] for x in (u, w))
    graph = SemiGraph(tuple(range(nv)), tuple(ends))  # type: ignore[arg-type]
    order = tuple(tuple(graph.branches_at(v)) for v in graph.vertices)
    opens = tuple((ne - 1 - e, k) for e, k in c.open_order)
    return ClutchingData(graph, order, opens)  # type: ignore[arg-type]


def alternative_graph(g: int, r: int) -> ClutchingData:
    """A second clutching datum of type (g,r), non-isomorphic to the standard one when possible."""
    _check_stable(g, r)
    if (g, r) == (2, 0):
        b = _Builder()
        u, w = b.vertex(), b.vertex()
        for _ in range(3):
            b.edge(u, w)
        return b.build()
    if g == 0 and r >= 4:
        # pair leg 1 with leg 3 instead of leg 2
        rank = list(range(r))
        rank[1], rank[2] = rank[2], rank[1]
        std = _caterpillar(["leg"] * r)
        return ClutchingData(std.graph, std.branch_order, tuple(std.open_order[i] for i in rank))
    if g >= 1 and g - 1 + r >= 2:
        return _ring(g - 1, r)
    return _relabelled(standard_graph(g, r))


def _merge(
    ends: list[tuple[Optional[int], Optional[int]]],
    orders: list[tuple[Branch, ...]],
    opens: list[Branch],
    ba: Branch,
    bb: Branch,
) -> tuple[list, list, list]:
    (ea, ka), (eb, kb) = sorted([ba, bb])
    if ea == eb:
        raise DomainError("both branches belong to the same edge")
    new_ends = list(ends)
    new_ends[ea] = (ends[ea][1 - ka], ends[eb][1 - kb])
    del new_ends[eb]

    def remap(b: Branch) -> Branch:
        e, k = b
        if b == (ea, 1 - ka):
            return (ea, 0)
        if b == (eb, 1 - kb):
            return (ea, 1)
        return (e - 1 if e > eb else e, k)

    new_orders = [tuple(remap(b) for b in o) for o in orders]
    new_opens = [remap(b) for b in opens if b not in (ba, bb)]
    return new_ends, new_orders, new_opens


def glue(c1: ClutchingData, i: int, c2: ClutchingData, j: int) -> ClutchingData:
    """Join open edge i of c1 to open edge j of c2 (a loop gluing when c2 is c1)."""
    for c, k in ((c1, i), (c2, j)):
        if not 0 <= k < len(c.open_order):
            raise DomainError(f"open-edge index {k} out of range")
    if c2 is c1:
        if i == j:
            raise DomainError("loop gluing needs two different open edges")
        ends = list(c1.graph.ends)
        orders = list(c1.branch_order)
        opens = list(c1.open_order)
        ba, bb = c1.open_order[i], c1.open_order[j]
        vertices = list(c1.graph.vertices)
    else:
        nv1 = (max(c1.graph.vertices) + 1) if c1.graph.vertices else 0
        ne1 = c1.graph.n_edges
        vmap = {v: v + nv1 for v in c2.graph.vertices}
        shift = lambda b: (b[0] + ne1, b[1])  # noqa: E731
        ends = list(c1.graph.ends) + [
            tuple(OPEN if x is OPEN else vmap[x] for x in pair) for pair in c2.graph.ends
        ]
        orders = list(c1.branch_order) + [tuple(shift(b) for b in o) for o in c2.branch_order]
        opens = list(c1.open_order) + [shift(b) for b in c2.open_order]
        ba, bb = c1.open_order[i], shift(c2.open_order[j])
        vertices = list(c1.graph.vertices) + [vmap[v] for v in c2.graph.vertices]
    new_ends, new_orders, new_opens = _merge(ends, orders, opens, ba, bb)
    graph = SemiGraph(tuple(vertices), tuple(new_ends))
    out = ClutchingData(graph, tuple(new_orders), tuple(new_opens))  # type: ignore[arg-type]
    problems = validate(out)
    if problems:
        raise DomainError("; ".join(problems))
    _check_stable(*graph_type(out))
    return out


def cut_edge(c: ClutchingData, e: int) -> list[ClutchingData]:
    """Split closed edge e into two open edges; one or two connected pieces.

    The new open edges come last in each piece's open order, the side-0 half
    before the side-1 half.
    """
    g = c.graph
    u, w = g.ends[e]
    if u is OPEN or w is OPEN:
        raise DomainError(f"edge {e} is open")
    ends = list(g.ends)
    ends[e] = (u, OPEN)
    ends.append((w, OPEN))
    new_e = len(ends) - 1
    orders = [tuple((new_e, 0) if b == (e, 1) else b for b in o) for o in c.branch_order]
    opens = list(c.open_order) + [(e, 1), (new_e, 1)]
    whole = SemiGraph(g.vertices, tuple(ends))
    pieces = _components(whole)
    if len(pieces) == 1:
        return [ClutchingData(whole, tuple(orders), tuple(opens))]  # type: ignore[arg-type]
    out = []
    for verts in pieces:
        keep_e = [i for i, pair in enumerate(ends) if any(x in verts for x in pair if x is not OPEN)]
        emap = {old: new for new, old in enumerate(keep_e)}
        vlist = [v for v in g.vertices if v in verts]
        sub = SemiGraph(tuple(vlist), tuple(ends[i] for i in keep_e))
        sub_orders = tuple(
            tuple((emap[b[0]], b[1]) for b in orders[g.vertices.index(v)]) for v in vlist
        )
        sub_opens = tuple((emap[b[0]], b[1]) for b in opens if b[0] in emap)
        out.append(ClutchingData(sub, sub_orders, sub_opens))  # type: ignore[arg-type]
    return out


def _components(g: SemiGraph) -> list[set[int]]:
    adj: dict[int, set[int]] = defaultdict(set)
    for u, w in g.ends:
        if u is not OPEN and w is not OPEN:
            adj[u].add(w)
            adj[w].add(u)
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for x in adj[stack.pop()]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        out.append(comp)
    return out


# JSON

def to_json_obj(c: ClutchingData) -> dict[str, Any]:
    def ref(b: Branch) -> dict[str, int]:
        return {"edge": b[0], "side": b[1]}

    return {
        "vertices": list(c.graph.vertices),
        "edges": [
            {"id": e, "branches": [{"open": True} if x is OPEN else {"vertex": x} for x in pair]}
            for e, pair in enumerate(c.graph.ends)
        ],
        "open_order": [ref(b) for b in c.open_order],
        "branch_order": [[ref(b) for b in o] for o in c.branch_order],
    }


def to_json(c: ClutchingData) -> str:
    return json.dumps(to_json_obj(c), indent=2)


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _parse_ref(obj: Any, path: str, errors: list[str]) -> Branch | None:
    if not isinstance(obj, dict) or set(obj) != {"edge", "side"}:
        errors.append(f"{path}: expected {{\"edge\": int, \"side\": 0|1}}")
        return None
    if not _is_int(obj["edge"]) or obj["side"] not in (0, 1) or isinstance(obj["side"], bool):
        errors.append(f"{path}: edge must be an integer and side 0 or 1")
        return None
    return (obj["edge"], obj["side"])


def from_json_obj(obj: Any) -> ClutchingData:
    errors: list[str] = []
    if not isinstance(obj, dict):
        raise ValidationError("$: expected a JSON object")
    unknown = set(obj) - {"vertices", "edges", "open_order", "branch_order"}
    if unknown:
        errors.append(f"$: unknown keys {sorted(unknown)}")
    for key in ("vertices", "edges"):
        if key not in obj:
            errors.append(f"$.{key}: missing")
    if errors:
        raise ValidationError("; ".join(errors), errors)
    verts = obj["vertices"]
    if not isinstance(verts, list) or not all(_is_int(v) for v in verts):
        raise ValidationError("$.vertices: expected a list of integers")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise ValidationError("$.edges: expected a list")
    ends: list[tuple[Optional[int], Optional[int]]] = []
    for e, rec in enumerate(edges):
        path = f"$.edges[{e}]"
        if not isinstance(rec, dict) or set(rec) != {"id", "branches"}:
            errors.append(f"{path}: expected an object with keys 'id' and 'branches'")
            continue
        if rec["id"] != e or not _is_int(rec["id"]):
            errors.append(f"{path}.id: expected {e}")
        br = rec["branches"]
        if not isinstance(br, list) or len(br) != 2:
            errors.append(f"{path}.branches: expected exactly two branches")
            continue
        pair: list[Optional[int]] = []
        for k, b in enumerate(br):
            bpath = f"{path}.branches[{k}]"
            if isinstance(b, dict) and set(b) == {"vertex"} and _is_int(b["vertex"]):
                pair.append(b["vertex"])
            elif isinstance(b, dict) and set(b) == {"open"} and b["open"] is True:
                pair.append(OPEN)
            else:
                errors.append(f'{bpath}: expected {{"vertex": int}} or {{"open": true}}')
                pair.append(OPEN)
        ends.append((pair[0], pair[1]))
    if errors:
        raise ValidationError("; ".join(errors), errors)
    graph = SemiGraph(tuple(verts), tuple(ends))
    problems = _violations_structure(graph)
    if problems:
        raise ValidationError("; ".join(problems), problems)
    if "open_order" in obj:
        raw = obj["open_order"]
        if not isinstance(raw, list):
            raise ValidationError("$.open_order: expected a list")
        opens = [_parse_ref(b, f"$.open_order[{i}]", errors) for i, b in enumerate(raw)]
    else:
        opens = graph.open_branches()
    if "branch_order" in obj:
        raw = obj["branch_order"]
        if not isinstance(raw, list) or len(raw) != len(verts):
            raise ValidationError("$.branch_order: expected one list per vertex")
        orders = []
        for i, o in enumerate(raw):
            if not isinstance(o, list) or len(o) != 3:
                errors.append(f"$.branch_order[{i}]: expected three branch refs")
                continue
            orders.append(tuple(_parse_ref(b, f"$.branch_order[{i}][{k}]", errors) for k, b in enumerate(o)))
    else:
        orders = [tuple(graph.branches_at(v)) for v in graph.vertices]
    if errors:
        raise ValidationError("; ".join(errors), errors)
    cd = ClutchingData(graph, tuple(orders), tuple(opens))  # type: ignore[arg-type]
    problems = validate(cd)
    if problems:
        raise ValidationError("; ".join(problems), problems)
    return cd


def from_json(text: str) -> ClutchingData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_json_obj(obj)
