"""Lattice points of dilated constructible sets and quasi-polynomial fits.

Everything here is exact: inequality rows are integer-scaled and the fits use
Fraction arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arith import PrimeLevel, is_prime
from .errors import NoPeriodFits, ResourceLimit
from .semigraph import ClutchingData, standard_graph
from .triples import SignVector, dagger_C_count_formula, enumerate_dagger_C, sign_row, sign_vectors

LATTICE_BUDGET = 10**8
_INNER_POINTS = 2_000_000


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    strict: bool


@dataclass(frozen=True)
class InequalitySystem:
    """Points x in [0,1]^dim with coeffs . x < rhs (strict) or <= rhs for every row."""

    dim: int
    rows: tuple[Row, ...]


@dataclass(frozen=True)
class ConstructibleSet:
    dim: int
    pieces: tuple[InequalitySystem, ...]


@dataclass(frozen=True)
class Strictness:
    sum_strict: bool
    lower_strict: tuple[bool, bool, bool]  # 0 < <x_i> instead of 0 <= <x_i>
    upper_strict: tuple[bool, bool, bool]  # <x_i> < <x_j> + <x_k>


# keyed by the sign ratios a[i][j] / a[i][j-1] of the three coordinates
P2_CASES: dict[tuple[int, int, int], Strictness] = {
    (+1, +1, +1): Strictness(True, (False, False, False), (False, False, False)),
    (-1, +1, +1): Strictness(True, (True, False, False), (False, True, True)),
    (+1, -1, +1): Strictness(True, (False, True, False), (True, False, True)),
    (+1, +1, -1): Strictness(True, (False, False, True), (True, True, False)),
    (-1, -1, +1): Strictness(False, (True, True, False), (False, False, True)),
    (-1, +1, -1): Strictness(False, (True, False, True), (False, True, False)),
    (+1, -1, -1): Strictness(False, (False, True, True), (True, False, False)),
    (-1, -1, -1): Strictness(False, (True, True, True), (True, True, True)),
}
LEVEL_ONE = P2_CASES[(+1, +1, +1)]


def _vertex_rows(dim: int, cols: Sequence[int], signs: Sequence[int], case: Strictness) -> list[Row]:
    """Rows for the triangle and sum conditions on <x_c>_sign over three columns (repeats allowed)."""

    # <x>_+ = x and <x>_- = 1 - x, as (coefficient vector, constant)
    def bracket(k: int) -> tuple[list[Fraction], Fraction]:
        vec = [Fraction(0)] * dim
        vec[cols[k]] += signs[k]
        return vec, Fraction(1 if signs[k] == -1 else 0)

    br = [bracket(k) for k in range(3)]

    def combo(weights: Sequence[int]) -> tuple[list[Fraction], Fraction]:
        vec = [Fraction(0)] * dim
        const = Fraction(0)
        for w, (v, c) in zip(weights, br):
            for i in range(dim):
                vec[i] += w * v[i]
            const += w * c
        return vec, const

    rows: list[Row] = []
    vec, const = combo((1, 1, 1))
    rows.append(Row(tuple(vec), 1 - const, case.sum_strict))
    for k in range(3):
        vec, const = combo(tuple(-1 if t == k else 0 for t in range(3)))
        rows.append(Row(tuple(vec), -const, case.lower_strict[k]))
        vec, const = combo(tuple(1 if t == k else -1 for t in range(3)))
        rows.append(Row(tuple(vec), -const, case.upper_strict[k]))
    return rows


def build_P1(a: SignVector, pp: PrimeLevel | None = None) -> ConstructibleSet:
    rows = _vertex_rows(3, (0, 1, 2), a.column(1), LEVEL_ONE)
    return ConstructibleSet(3, (InequalitySystem(3, tuple(rows)),))


def build_P2(a: SignVector, pp: PrimeLevel | None = None) -> ConstructibleSet:
    N = a.N
    dim = 3 * (N - 1)
    rows: list[Row] = []
    for j in range(2, N + 1):
        cur, prev = a.column(j), a.column(j - 1)
        case = P2_CASES[tuple(x * y for x, y in zip(cur, prev))]  # type: ignore[index]
        base = 3 * (j - 2)
        rows += _vertex_rows(dim, (base, base + 1, base + 2), cur, case)
    return ConstructibleSet(dim, (InequalitySystem(dim, tuple(rows)),))


def _integer_rows(system: InequalitySystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    A, b, strict = [], [], []
    for row in system.rows:
        scale = lcm(*(x.denominator for x in row.coeffs), row.rhs.denominator)
        A.append([int(x * scale) for x in row.coeffs])
        b.append(int(row.rhs * scale))
        strict.append(row.strict)
    dim = system.dim
    return (
        np.array(A, dtype=np.int64).reshape(len(A), dim),
        np.array(b, dtype=np.int64),
        np.array(strict, dtype=bool),
    )


def _satisfied(lhs: np.ndarray, bound: np.ndarray, strict: np.ndarray) -> np.ndarray:
    return np.where(strict, lhs < bound, lhs <= bound).all(axis=-1)


def lattice_count(cset: ConstructibleSet, m: int, budget: int = LATTICE_BUDGET) -> int:
    """Integer points of the m-dilation (unit box included)."""
    dim = cset.dim
    if m < 0:
        raise ValueError("dilation must be nonnegative")
    if not cset.pieces:
        return 0
    if (m + 1) ** dim > budget:
        raise ResourceLimit(f"(m+1)^dim = {(m + 1) ** dim} exceeds the lattice budget {budget}")
    systems = [_integer_rows(s) for s in cset.pieces]
    if dim == 0:
        return int(any(_satisfied(np.zeros(len(b), dtype=np.int64), m * b, st) for _, b, st in systems))
    k = dim
    while k > 1 and (m + 1) ** k > _INNER_POINTS:
        k -= 1
    axis = np.arange(m + 1, dtype=np.int64)
    inner = np.stack(np.meshgrid(*([axis] * k), indexing="ij"), axis=-1).reshape(-1, k)
    prepared = [(inner @ A[:, dim - k:].T, A[:, : dim - k], m * b, st) for A, b, st in systems]
    total = 0
    for prefix in product(range(m + 1), repeat=dim - k):
        pre = np.array(prefix, dtype=np.int64)
        mask = np.zeros(len(inner), dtype=bool)
        for inner_lhs, A_out, bound, st in prepared:
            mask |= _satisfied(inner_lhs + A_out @ pre, bound, st)
        total += int(mask.sum())
    return total


def dagger_lift(t: Sequence[int], pp: PrimeLevel) -> tuple[SignVector, tuple[int, ...], tuple[int, ...]]:
    """Sign vector of t and its lattice point in (p-1)P1 x pP2."""
    a = SignVector(tuple(sign_row(s, pp) for s in t))
    digits = [[(s // pp.p**j) % pp.p for j in range(pp.N)] for s in t]
    x1 = tuple(digits[i][0] for i in range(3))
    x2 = tuple(
        digits[i][j - 1] + (1 if a.entries[i][j - 2] == -1 else 0) for j in range(2, pp.N + 1) for i in range(3)
    )
    return a, x1, x2


def in_dilation(cset: ConstructibleSet, point: Sequence[int], m: int) -> bool:
    if any(not 0 <= x <= m for x in point):
        return False
    y = np.array(point, dtype=np.int64)
    return any(
        bool(_satisfied(A @ y if A.size else np.zeros(len(b), dtype=np.int64), m * b, st))
        for A, b, st in map(_integer_rows, cset.pieces)
    )


def dagger_C_via_lattice(pp: PrimeLevel, budget: int = LATTICE_BUDGET) -> int:
    return sum(
        lattice_count(build_P1(a), pp.p - 1, budget) * lattice_count(build_P2(a), pp.p, budget)
        for a in sign_vectors(pp.N)
    )


# graphs: signs are attached per edge, one row of N signs each, top level +1

EdgeSigns = tuple[tuple[int, ...], ...]


def edge_sign_vectors(n_edges: int, N: int) -> Iterator[EdgeSigns]:
    for free in product((1, -1), repeat=n_edges * (N - 1)):
        yield tuple(tuple(free[e * (N - 1):(e + 1) * (N - 1)]) + (1,) for e in range(n_edges))


def build_graph_sets(
    c: ClutchingData, signs: EdgeSigns, pp: PrimeLevel
) -> tuple[ConstructibleSet, ConstructibleSet]:
    N = pp.N
    E = c.graph.n_edges
    rows1: list[Row] = []
    rows2: list[Row] = []
    dim2 = E * (N - 1)
    for v in c.graph.vertices:
        edges = [e for e, _ in c.vertex_branches(v)]
        rows1 += _vertex_rows(E, edges, [signs[e][0] for e in edges], LEVEL_ONE)
        for j in range(2, N + 1):
            cur = [signs[e][j - 1] for e in edges]
            prev = [signs[e][j - 2] for e in edges]
            case = P2_CASES[tuple(x * y for x, y in zip(cur, prev))]  # type: ignore[index]
            cols = [e * (N - 1) + (j - 2) for e in edges]
            rows2 += _vertex_rows(dim2, cols, cur, case)
    return (
        ConstructibleSet(E, (InequalitySystem(E, tuple(rows1)),)),
        ConstructibleSet(dim2, (InequalitySystem(dim2, tuple(rows2)),)),
    )


def edge_count_via_lattice(c: ClutchingData, pp: PrimeLevel, budget: int = LATTICE_BUDGET) -> int:
    total = 0
    for signs in edge_sign_vectors(c.graph.n_edges, pp.N):
        P1G, P2G = build_graph_sets(c, signs, pp)
        n1 = lattice_count(P1G, pp.p - 1, budget)
        if n1:
            total += n1 * lattice_count(P2G, pp.p, budget)
    return total


def edge_count_shared_signs(c: ClutchingData, pp: PrimeLevel, budget: int = LATTICE_BUDGET) -> int:
    """The reading where one sign vector is shared by every vertex through its branch order.

    Kept only to show that it disagrees with the edge count on graphs with
    more than one vertex.
    """
    total = 0
    E = c.graph.n_edges
    for a in sign_vectors(pp.N):
        rows1: list[Row] = []
        rows2: list[Row] = []
        dim2 = E * (pp.N - 1)
        for v in c.graph.vertices:
            edges = [e for e, _ in c.vertex_branches(v)]
            rows1 += _vertex_rows(E, edges, a.column(1), LEVEL_ONE)
            for j in range(2, pp.N + 1):
                case = P2_CASES[tuple(x * y for x, y in zip(a.column(j), a.column(j - 1)))]  # type: ignore[index]
                rows2 += _vertex_rows(dim2, [e * (pp.N - 1) + (j - 2) for e in edges], a.column(j), case)
        P1 = ConstructibleSet(E, (InequalitySystem(E, tuple(rows1)),))
        P2 = ConstructibleSet(dim2, (InequalitySystem(dim2, tuple(rows2)),))
        total += lattice_count(P1, pp.p - 1, budget) * lattice_count(P2, pp.p, budget)
    return total


# quasi-polynomials

@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    constituents: tuple[tuple[Fraction, ...], ...]  # coefficients, constant term first

    def __call__(self, t: int) -> Fraction:
        coeffs = self.constituents[t % self.period]
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        return max(_degree(c) for c in self.constituents)

    def constituent_degrees(self) -> list[int]:
        return [_degree(c) for c in self.constituents]

    def to_json_obj(self) -> dict:
        return {
            "period": self.period,
            "constituents": [[f"{c.numerator}/{c.denominator}" for c in cs] for cs in self.constituents],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuasiPolynomial":
        return cls(int(obj["period"]), tuple(tuple(Fraction(x) for x in cs) for cs in obj["constituents"]))


def _degree(coeffs: Sequence[Fraction]) -> int:
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0:
        d -= 1
    return d


def interpolate(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Monomial coefficients of the polynomial through the points (Newton form, expanded)."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    n = len(points)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # prod (t - x_i) so far
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[k] * b
        basis = nxt
    return tuple(coeffs)


def _poly_eval(coeffs: Sequence[Fraction], t: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def fit_quasipolynomial(
    samples: Iterable[tuple[int, int]], degree: int, periods: Sequence[int] = (2, 4, 8)
) -> QuasiPolynomial:
    pts = sorted(set(samples))
    for ell in sorted(periods):
        if ell % 2:
            continue
        constituents = []
        for rho in range(ell):
            cls_pts = [(m, v) for m, v in pts if m % ell == rho]
            if len(cls_pts) < degree + 1:
                break
            coeffs = interpolate(cls_pts[: degree + 1])
            if any(_poly_eval(coeffs, m) != v for m, v in cls_pts):
                break
            constituents.append(coeffs)
        else:
            return QuasiPolynomial(ell, tuple(constituents))
    raise NoPeriodFits(f"no period in {list(periods)} reproduces the samples with degree {degree}")


def fit_lattice_counts(
    cset: ConstructibleSet, periods: Sequence[int] = (2, 4, 8), start: int = 1, holdout: int = 3
) -> QuasiPolynomial:
    """Fit i(m) for m >= start, then confirm on a few fresh dilations.

    Sets with strict inequalities can disagree with their quasi-polynomial at
    m = 0, which is why sampling starts at 1.
    """
    d = cset.dim
    top = start + max(periods) * (d + 2)
    samples = [(m, lattice_count(cset, m)) for m in range(start, top)]
    qp = fit_quasipolynomial(samples, d, periods)
    for m in range(top, top + holdout):
        if qp(m) != lattice_count(cset, m):
            raise NoPeriodFits(f"fitted quasi-polynomial fails at held-out dilation {m}")
    return qp


def _shift(coeffs: Sequence[Fraction], k: int) -> list[Fraction]:
    """Coefficients of f(t + k)."""
    out = [Fraction(0)] * len(coeffs)
    binom_row = [Fraction(1)]
    for n, c in enumerate(coeffs):
        # (t+k)^n = sum C(n,i) k^(n-i) t^i
        if n:
            binom_row = [Fraction(1)] + [binom_row[i] + binom_row[i + 1] for i in range(len(binom_row) - 1)] + [Fraction(1)]
        for i, b in enumerate(binom_row):
            out[i] += c * b * Fraction(k) ** (n - i)
    return out


def _mul(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return out


def compose_H(pairs: Sequence[tuple[QuasiPolynomial, QuasiPolynomial]]) -> QuasiPolynomial:
    """t -> sum of f1(t-1) * f2(t) over the given pairs, as one quasi-polynomial."""
    period = lcm(*(f.period for pair in pairs for f in pair))
    constituents = []
    for rho in range(period):
        acc: list[Fraction] = [Fraction(0)]
        for f1, f2 in pairs:
            term = _mul(_shift(f1.constituents[(rho - 1) % f1.period], -1), f2.constituents[rho % f2.period])
            acc = [x + y for x, y in zip(acc + [Fraction(0)] * (len(term) - len(acc)), term + [Fraction(0)] * (len(acc) - len(term)))]
        constituents.append(tuple(acc))
    return QuasiPolynomial(period, tuple(constituents))


def graph_quasipolynomial(c: ClutchingData, N: int) -> QuasiPolynomial:
    pp = PrimeLevel(3, N)  # only N matters for the sets
    pairs = []
    for signs in edge_sign_vectors(c.graph.n_edges, N):
        P1G, P2G = build_graph_sets(c, signs, pp)
        pairs.append((fit_lattice_counts(P1G), fit_lattice_counts(P2G)))
    return compose_H(pairs)


def verify_quasipolynomial(
    g: int, r: int, primes: Sequence[int], N: int, counter=None, reference=None
) -> dict:
    """Fit H for the standard graph of type (g,r) and compare H(p) with direct counts.

    ``counter(c, pp)`` gives the direct count (the edge-count DP by default);
    ``reference(pp)`` is an optional closed form checked at every prime.
    """
    if counter is None:
        from .edgecount import count as _count

        counter = lambda c, pp: _count(c, pp).count  # noqa: E731
    c = standard_graph(g, r)
    H = graph_quasipolynomial(c, N)
    expected_degree = (3 * g - 3 + 2 * r) * N
    odd_degrees = [d for rho, d in enumerate(H.constituent_degrees()) if rho % 2]
    rows = []
    for p in primes:
        if not is_prime(p) or p < 3:
            raise ValueError(f"{p} is not an odd prime")
        pp = PrimeLevel(p, N)
        value = H(p)
        row = {"p": p, "H": str(value)}
        if counter is not False and pp.q <= 343:
            row["count"] = counter(c, pp)
        if reference is not None:
            row["reference"] = reference(pp)
        row["pass"] = all(value == row[k] for k in ("count", "reference") if k in row)
        rows.append(row)
    return {
        "g": g,
        "r": r,
        "N": N,
        "period": H.period,
        "degree": max(odd_degrees),
        "expected_degree": expected_degree,
        "quasi_polynomial": H.to_json_obj(),
        "primes": rows,
        "pass": max(odd_degrees) == expected_degree and H.period % 2 == 0 and all(x["pass"] for x in rows),
    }


def closed_form_03(pp: PrimeLevel) -> int:
    return dagger_C_count_formula(pp)


def enumeration_count(pp: PrimeLevel) -> int:
    return len(enumerate_dagger_C(pp))
