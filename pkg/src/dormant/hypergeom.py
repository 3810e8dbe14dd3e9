"""Gauss hypergeometric operators mod p^N and their truncated series.

Series coefficients are carried as a unit mod q times a power of p, with the
valuations accumulated over the integers, so the stop rule is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import PrimeLevel, RadiusClass, ResidueClass, reduce_prime
from .errors import ParameterError
from .triples import xi_radii


@dataclass(frozen=True)
class HGOperator:
    a: int
    b: int
    c: int
    pp: PrimeLevel

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 1 <= v <= self.pp.q:
                raise ParameterError(f"{name}={v!r} outside [1, {self.pp.q}]")


@dataclass(frozen=True)
class TruncatedSeries:
    start_exponent: int
    coefficients: list[int] = field(default_factory=list)
    terminated: bool = False
    reason: str | None = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def exponent_differences(op: HGOperator) -> tuple[ResidueClass, ResidueClass, ResidueClass]:
    q = op.pp.q
    a, b, c = op.a, op.b, op.c
    return tuple(ResidueClass.of(x, q) for x in (1 - c, c - a - b, b - a))  # type: ignore[return-value]


def truncated_2F1(a: int, b: int, c: int, pp: PrimeLevel, start_exponent: int = 0) -> TruncatedSeries:
    p, N, q = pp.p, pp.N, pp.q
    coeffs = [1]
    unit_num = unit_den = 1
    v_num = v_den = 0
    # (a+n) reaches a multiple of q by n = q-1, so the loop always exits early
    for n in range(q):
        num, den = (a + n) * (b + n), (1 + n) * (c + n)
        vn, vd = valuation(num, p), valuation(den, p)
        if vn >= N:
            return TruncatedSeries(start_exponent, coeffs, True)
        if vd >= N:
            return TruncatedSeries(
                start_exponent, coeffs, False, f"denominator vanishes mod p^N at n={n} before the numerator"
            )
        v_num += vn
        v_den += vd
        unit_num = unit_num * (num // p**vn) % q
        unit_den = unit_den * (den // p**vd) % q
        if v_num < v_den:
            return TruncatedSeries(
                start_exponent, coeffs, False, f"coefficient of x^{n + 1} is not p-integral"
            )
        coeffs.append(p ** (v_num - v_den) * unit_num * pow(unit_den, -1, q) % q)
    raise AssertionError("series did not terminate below degree q")


@dataclass(frozen=True)
class RootFunctionReport:
    full: bool
    series0: TruncatedSeries
    series1: TruncatedSeries | None
    reason: str | None = None


def root_function_report(op: HGOperator) -> RootFunctionReport:
    pp = op.pp
    a, b, c = op.a, op.b, op.c
    s0 = truncated_2F1(a, b, c, pp, 0)
    rp = lambda x: reduce_prime(x, pp.N, pp)  # noqa: E731
    s1 = truncated_2F1(rp(a - c + 1), rp(b - c + 1), rp(2 - c), pp, 1 - c)
    if (1 - c) % pp.p == 0:
        # the local exponents 0 and 1-c collide mod p, so the two series are not independent
        return RootFunctionReport(False, s0, s1, "exponents at 0 coincide mod p")
    for s in (s0, s1):
        if not s.terminated:
            return RootFunctionReport(False, s0, s1, s.reason)
    return RootFunctionReport(True, s0, s1)


def has_full_root_functions(op: HGOperator) -> bool:
    return root_function_report(op).full


def hg_radii(op: HGOperator) -> tuple[RadiusClass, RadiusClass, RadiusClass]:
    return xi_radii((op.a, op.b, op.c), op.pp)


def scan_full_root_functions(pp: PrimeLevel) -> list[tuple[int, int, int]]:
    r = range(1, pp.q + 1)
    return [
        (a, b, c) for a in r for b in r for c in r if has_full_root_functions(HGOperator(a, b, c, pp))
    ]


def report_record(op: HGOperator) -> dict:
    rep = root_function_report(op)
    try:
        radii: list[int] | None = [r.lam for r in hg_radii(op)]
    except ValueError:
        radii = None
    return {
        "a": op.a,
        "b": op.b,
        "c": op.c,
        "full": rep.full,
        "series0": rep.series0.coefficients,
        "series1": rep.series1.coefficients if rep.series1 else None,
        "start_exponent1": rep.series1.start_exponent if rep.series1 else None,
        "radii": radii,
        "exponent_differences": [x.rep for x in exponent_differences(op)],
        "reason": rep.reason,
    }
