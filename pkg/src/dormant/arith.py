"""Residues mod p^N, the radius alphabet and level reductions.

A radius is stored through its lambda-representative: the class of 2*rho in
(Z/qZ)^x / {+-1}, written as the integer in [1, (q-1)/2] coprime to p.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotInvertible, ParameterError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeLevel:
    p: int
    N: int
    q: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p < 3:
            raise ParameterError(f"p must be an odd prime, got {self.p!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise ParameterError(f"level N must be an integer >= 1, got {self.N!r}")
        object.__setattr__(self, "q", self.p**self.N)

    def modulus(self, level: int) -> int:
        check_level(level, self)
        return self.p**level


@dataclass(frozen=True, order=True)
class RadiusClass:
    lam: int

    @classmethod
    def checked(cls, lam: int, pp: PrimeLevel) -> "RadiusClass":
        if not 1 <= lam <= (pp.q - 1) // 2:
            raise ParameterError(f"radius lambda={lam} outside [1, {(pp.q - 1) // 2}]")
        if lam % pp.p == 0:
            raise NotInvertible(f"radius lambda={lam} is divisible by p={pp.p}")
        return cls(lam)

    @classmethod
    def from_twice(cls, x: int, pp: PrimeLevel) -> "RadiusClass":
        """The radius rho with 2*rho = x, for x a unit mod q."""
        if x % pp.p == 0:
            raise NotInvertible(f"{x} is divisible by p={pp.p}")
        return cls(ResidueClass.of(x, pp.q).rep)


@dataclass(frozen=True, order=True)
class ResidueClass:
    rep: int

    @classmethod
    def of(cls, a: int, q: int) -> "ResidueClass":
        r = a % q
        return cls(min(r, q - r))


def check_level(level: int, pp: PrimeLevel) -> None:
    if not isinstance(level, int) or not 1 <= level <= pp.N:
        raise ParameterError(f"level {level!r} outside [1, {pp.N}]")


def reduce(a: int, level: int, pp: PrimeLevel) -> int:
    check_level(level, pp)
    return a % pp.p**level


def reduce_prime(a: int, level: int, pp: PrimeLevel) -> int:
    """Like ``reduce`` but returns p^level instead of 0."""
    check_level(level, pp)
    m = pp.p**level
    r = a % m
    return r if r else m


def radius_of_svalue(s: int, pp: PrimeLevel) -> RadiusClass:
    try:
        return RadiusClass.from_twice(2 * s + 1, pp)
    except NotInvertible:
        raise NotInvertible(f"p={pp.p} divides 2s+1={2 * s + 1}") from None


def svalue_of_radius(rho: RadiusClass, pp: PrimeLevel) -> int:
    """The unique s with 0 <= 2s <= q-2 and radius_of_svalue(s) = rho."""
    lam = rho.lam
    # 2s+1 is lam or q-lam, whichever is odd
    odd = lam if lam % 2 else pp.q - lam
    return (odd - 1) // 2


def epsilon(pp: PrimeLevel) -> RadiusClass:
    return RadiusClass(1)


def involute(rho: RadiusClass) -> RadiusClass:
    # [a, -a] is fixed by negation, so the involution is trivial in rank 2
    return rho


def enumerate_radii(pp: PrimeLevel) -> list[RadiusClass]:
    return [RadiusClass(lam) for lam in range(1, (pp.q - 1) // 2 + 1) if lam % pp.p]


def radius_count(pp: PrimeLevel) -> int:
    return (pp.p - 1) * pp.p ** (pp.N - 1) // 2
