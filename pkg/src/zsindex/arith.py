"""Exact modular arithmetic over Z_n: canonical residues, factoring, units.

Residues follow the [1, n] convention: the canonical representative of the
zero class is n itself, so multiples of n map to n, never to 0.  All values
are plain Python ints; every operation here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidModulusError, NotAUnitError

__all__ = [
    "GroupContext",
    "canonical_residue",
    "euler_phi",
    "factorize",
    "is_unit",
    "unit_inverse",
    "units_stream",
]


def canonical_residue(x: int, n: int) -> int:
    """Return the unique r in [1, n] with r congruent to x mod n."""
    if n < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {n}")
    r = x % n
    return n if r == 0 else r


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, ascending primes; [] for n == 1.

    Trial division is exact and fast at the desk scale this package targets
    (campaign moduli stay well below 10**6).
    """
    if n < 1:
        raise InvalidModulusError(f"cannot factor {n}")
    factors: list[tuple[int, int]] = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def is_unit(x: int, n: int) -> bool:
    """True iff the class of x is invertible mod n."""
    if n < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {n}")
    return math.gcd(x, n) == 1


def unit_inverse(u: int, n: int) -> int:
    """Inverse w in [1, n-1] of the unit u, so that u*w is 1 mod n."""
    if not is_unit(u, n):
        raise NotAUnitError(f"{u} is not a unit mod {n}")
    return pow(u, -1, n)


def euler_phi(n: int) -> int:
    """Number of units mod n."""
    if n < 1:
        raise InvalidModulusError(f"phi undefined for {n}")
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def units_stream(n: int) -> Iterator[int]:
    """All units mod n in ascending order, each in [1, n-1]."""
    if n < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {n}")
    return (u for u in range(1, n) if math.gcd(u, n) == 1)


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupContext:
    """A modulus n with its prime factorization; the ambient group Z_n.

    Immutable after construction; safe to share across workers.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidModulusError(f"group order must be >= 2, got {self.n}")
        product = 1
        last_p = 1
        for p, e in self.factors:
            if p <= last_p:
                raise InvalidModulusError("factor primes must be strictly increasing")
            if e < 1:
                raise InvalidModulusError("factor exponents must be >= 1")
            if not _is_prime(p):
                raise InvalidModulusError(f"{p} is not prime")
            product *= p**e
            last_p = p
        if product != self.n:
            raise InvalidModulusError(
                f"factorization {self.factors} does not reconstruct {self.n}"
            )

    @classmethod
    def for_modulus(cls, n: int) -> "GroupContext":
        if n < 2:
            raise InvalidModulusError(f"group order must be >= 2, got {n}")
        return cls(n=n, factors=tuple(factorize(n)))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def is_composite(self) -> bool:
        return not self.is_prime

    @property
    def coprime_to_six(self) -> bool:
        return self.n % 2 != 0 and self.n % 3 != 0

    def phi(self) -> int:
        phi = 1
        for p, e in self.factors:
            phi *= (p - 1) * p ** (e - 1)
        return phi

    def units(self) -> Iterator[int]:
        return units_stream(self.n)
