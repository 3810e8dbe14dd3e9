"""Exponent triples (sets C, dagger-C) and hypergeometric parameter triples (B, dagger-B).

Enumeration order is lexicographic everywhere so that tables are stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .arith import PrimeLevel, RadiusClass, check_level, radius_of_svalue, reduce_prime
from .errors import DomainError, NotInvertible, ParameterError, ResourceLimit

DEFAULT_BUDGET = 343  # largest q enumerated without an explicit override


class ExponentTriple(NamedTuple):
    s1: int
    s2: int
    s3: int


class ParamTriple(NamedTuple):
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class SignVector:
    """Signs a[i][j] for coordinate i in 0..2 and level j in 0..N-1 (level j+1)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 3 or len({len(row) for row in self.entries}) != 1:
            raise DomainError("a sign vector has three rows of equal length")
        if any(x not in (1, -1) for row in self.entries for x in row):
            raise DomainError("sign entries must be +1 or -1")
        if any(row[-1] != 1 for row in self.entries):
            raise DomainError("top-level signs must all be +1")

    @property
    def N(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple[int, int, int]:
        """Signs of the three coordinates at level j (1-based)."""
        return tuple(row[j - 1] for row in self.entries)  # type: ignore[return-value]

    @classmethod
    def of_triple(cls, t: Sequence[int], pp: PrimeLevel) -> "SignVector":
        return cls(tuple(sign_row(s, pp) for s in t))


def sign_row(s: int, pp: PrimeLevel) -> tuple[int, ...]:
    """+1 at level j iff the residue of s mod p^j lies in the lower half."""
    return tuple(1 if s % pp.p**j <= (pp.p**j - 1) // 2 else -1 for j in range(1, pp.N + 1))


def sign_vectors(N: int) -> Iterator[SignVector]:
    for free in product((1, -1), repeat=3 * (N - 1)):
        rows = tuple(tuple(free[i * (N - 1):(i + 1) * (N - 1)]) + (1,) for i in range(3))
        yield SignVector(rows)


def _c_ok(t: Sequence[int], m: int) -> bool:
    s1, s2, s3 = t
    if min(t) < 0 or max(t) > m - 1:
        return False
    return s1 + s2 + s3 <= m - 2 and abs(s2 - s3) <= s1 <= s2 + s3


def in_C(t: Sequence[int], level: int, pp: PrimeLevel) -> bool:
    check_level(level, pp)
    return _c_ok(t, pp.p**level)


def in_dagger_C(t: Sequence[int], pp: PrimeLevel) -> bool:
    if not _c_ok(t, pp.q):
        return False
    for level in range(1, pp.N):
        m = pp.p**level
        choices = [(s % m, m - 1 - s % m) for s in t]
        if not any(_c_ok(cand, m) for cand in product(*choices)):
            return False
    return True


def _c_mask(s1, s2, s3, m: int):
    return (s1 + s2 + s3 <= m - 2) & (np.abs(s2 - s3) <= s1) & (s1 <= s2 + s3)


def _dagger_c_slice(s1: int, grid2: np.ndarray, grid3: np.ndarray, pp: PrimeLevel) -> np.ndarray:
    mask = _c_mask(s1, grid2, grid3, pp.q)
    for level in range(1, pp.N):
        m = pp.p**level
        r1 = s1 % m
        r2, r3 = grid2 % m, grid3 % m
        ok = np.zeros_like(mask)
        for x1 in (r1, m - 1 - r1):
            for x2 in (r2, m - 1 - r2):
                for x3 in (r3, m - 1 - r3):
                    ok |= _c_mask(x1, x2, x3, m)
        mask &= ok
    return mask


def check_budget(pp: PrimeLevel, budget: int | None) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if pp.q > limit:
        raise ResourceLimit(f"p^N = {pp.q} exceeds the enumeration budget {limit}")


@lru_cache(maxsize=None)
def _dagger_c_table(pp: PrimeLevel) -> tuple[ExponentTriple, ...]:
    # every member has 2*s_i <= q-2, so the search box can be halved
    bound = (pp.q - 2) // 2 + 1
    axis = np.arange(bound, dtype=np.int64)
    grid2, grid3 = np.meshgrid(axis, axis, indexing="ij")
    out: list[ExponentTriple] = []
    for s1 in range(bound):
        idx = np.nonzero(_dagger_c_slice(s1, grid2, grid3, pp))
        out.extend(ExponentTriple(s1, int(a), int(b)) for a, b in zip(*idx))
    return tuple(out)


def enumerate_dagger_C(
    pp: PrimeLevel, budget: int | None = None, cache_dir: Path | str | None = None
) -> list[ExponentTriple]:
    check_budget(pp, budget)
    if cache_dir is not None:
        from .cache import load_or_build_triples

        return load_or_build_triples(pp, Path(cache_dir), lambda: list(_dagger_c_table(pp)))
    return list(_dagger_c_table(pp))


def dagger_C_count_formula(pp: PrimeLevel) -> int:
    p, N = pp.p, pp.N
    num = (p * p - 1) * p**N * (p * p + 2) ** (N - 1)
    return num // (8 * 3**N)


def dagger_B_count_formula(pp: PrimeLevel) -> int:
    return 8 * dagger_C_count_formula(pp)


def alphabet(pp: PrimeLevel, budget: int | None = None) -> list[int]:
    """The s-values that occur as a coordinate of some dagger-C triple."""
    return sorted({s for t in enumerate_dagger_C(pp, budget) for s in t})


def _b_ok(t: Sequence[int], m: int) -> bool:
    a, b, c = t
    if min(t) < 1 or max(t) > m:
        return False
    return a < c <= b or b < c <= a


def in_B(t: Sequence[int], level: int, pp: PrimeLevel) -> bool:
    check_level(level, pp)
    return _b_ok(t, pp.p**level)


def in_dagger_B(t: Sequence[int], pp: PrimeLevel) -> bool:
    if not _b_ok(t, pp.q):
        return False
    return all(
        _b_ok([reduce_prime(x, level, pp) for x in t], pp.p**level) for level in range(1, pp.N)
    )


def xi_radii(t: Sequence[int], pp: PrimeLevel) -> tuple[RadiusClass, RadiusClass, RadiusClass]:
    """Radii of (1-c)/2, (c-a-b)/2, (b-a)/2 in lambda form."""
    a, b, c = t
    out = []
    for pos, x in enumerate((1 - c, c - a - b, b - a)):
        try:
            out.append(RadiusClass.from_twice(x, pp))
        except NotInvertible:
            raise NotInvertible(f"exponent difference {x} at position {pos} is divisible by p", pos) from None
    return tuple(out)  # type: ignore[return-value]


@lru_cache(maxsize=None)
def _radius_index(pp: PrimeLevel) -> dict[tuple[int, int, int], ExponentTriple]:
    index: dict[tuple[int, int, int], ExponentTriple] = {}
    for t in _dagger_c_table(pp):
        key = tuple(radius_of_svalue(s, pp).lam for s in t)
        if key in index:
            raise AssertionError(f"radius triple {key} has two preimages {index[key]} and {t}")
        index[key] = t
    return index


def bc_map(t: Sequence[int], pp: PrimeLevel) -> ExponentTriple:
    if not in_dagger_B(t, pp):
        raise DomainError(f"{tuple(t)} is not in dagger-B for (p,N)=({pp.p},{pp.N})")
    check_budget(pp, None)
    key = tuple(r.lam for r in xi_radii(t, pp))
    try:
        return _radius_index(pp)[key]
    except KeyError:
        raise DomainError(f"no dagger-C triple has radii {key}") from None


def eight_transforms(t: Sequence[int], pp: PrimeLevel) -> list[ParamTriple]:
    """The eight parameter triples sharing one hypergeometric oper."""
    a, b, c = t
    q = pp.q
    rp = lambda x: reduce_prime(x, pp.N, pp)  # noqa: E731
    out = [
        (a, b, c),
        (b, a, c),
        (rp(c - b), rp(c - a), c),
        (rp(c - a), rp(c - b), c),
        (1 + q - a, 1 + q - b, 2 + q - c),
        (1 + q - b, 1 + q - a, 2 + q - c),
        (rp(1 + a - c), rp(1 + b - c), 2 + q - c),
        (rp(1 + b - c), rp(1 + a - c), 2 + q - c),
    ]
    return [ParamTriple(*x) for x in out]


def _t_sets(p: int) -> tuple[list, list, list]:
    cube = list(product(range(p), repeat=3))
    le_le = [r for r in cube if r[0] <= r[1] <= r[2]]
    lt_le = [r for r in cube if r[0] < r[1] <= r[2]]
    gt_gt = [r for r in cube if r[0] > r[1] > r[2]]
    return lt_le, le_le, gt_gt


def delta_construct(vectors: Sequence[Sequence[int]], variant: int, pp: PrimeLevel) -> ParamTriple:
    p = pp.p
    if variant not in (1, 2):
        raise DomainError("variant must be 1 or 2")
    if len(vectors) != pp.N:
        raise DomainError(f"expected {pp.N} vectors, got {len(vectors)}")
    vecs = [tuple(v) for v in vectors]
    for j, r in enumerate(vecs):
        if len(r) != 3 or not all(isinstance(x, int) and 0 <= x < p for x in r):
            raise DomainError(f"vector {j} must have three entries in [0, {p - 1}]")
    r1, r2, r3 = vecs[0]
    if not r1 < r2 <= r3:
        raise DomainError("first vector must satisfy r1 < r2 <= r3")
    q1, q2, q3 = 1 + r1, 1 + r3, 1 + r2
    for j in range(1, pp.N):
        r1, r2, r3 = vecs[j]
        if not (r1 <= r2 <= r3 or r1 > r2 > r3):
            raise DomainError(f"vector {j} must satisfy r1 <= r2 <= r3 or r1 > r2 > r3")
        pj = p**j
        if q1 < q3 <= q2:
            q1, q2, q3 = q1 + pj * r1, q2 + pj * r3, q3 + pj * r2
        else:
            q1, q2, q3 = q1 + pj * r3, q2 + pj * r1, q3 + pj * r2
    if variant == 2:
        q1, q2 = q2, q1
    return ParamTriple(q1, q2, q3)


def delta_inputs(pp: PrimeLevel) -> Iterator[tuple[tuple[tuple[int, int, int], ...], int]]:
    lt_le, le_le, gt_gt = _t_sets(pp.p)
    rest = le_le + gt_gt
    for first in lt_le:
        for tail in product(rest, repeat=pp.N - 1):
            for variant in (1, 2):
                yield (first,) + tail, variant


def enumerate_dagger_B(pp: PrimeLevel, budget: int | None = None) -> list[ParamTriple]:
    check_budget(pp, budget)
    image = [delta_construct(v, k, pp) for v, k in delta_inputs(pp)]
    unique = sorted(set(image))
    if len(unique) != len(image):
        raise AssertionError("delta construction is not injective")
    return unique


def brute_force_dagger_B(pp: PrimeLevel, budget: int | None = None) -> list[ParamTriple]:
    check_budget(pp, budget)
    r = range(1, pp.q + 1)
    return [ParamTriple(*t) for t in product(r, r, r) if in_dagger_B(t, pp)]


def brute_force_dagger_C(pp: PrimeLevel, budget: int | None = None) -> list[ExponentTriple]:
    """Scalar scan over the whole cube; slow, used as an independent check."""
    check_budget(pp, budget)
    r = range(pp.q)
    return [ExponentTriple(*t) for t in product(r, r, r) if in_dagger_C(t, pp)]
