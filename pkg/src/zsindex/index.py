"""The index oracle and the two sufficient criteria it certifies against.

For a sequence S = (x_1, ..., x_k) over Z_n and a unit u, the norm of S
under u is (|u*x_1|_n + ... + |u*x_k|_n) / n as an exact rational.  The
index of S is the minimum of that norm over all units; it is an integer
exactly when S is zero-sum.  No floating point anywhere: the conjecture
this package probes is an exact statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_unit
from .errors import NotAUnitError
from .sequences import ZsSequence

__all__ = [
    "IndexResult",
    "index_oracle",
    "one_side_criterion",
    "triple_sum_criterion",
    "unit_norm",
]


@dataclass(frozen=True)
class IndexResult:
    """Outcome of the full unit scan.

    numerator is the minimum over units of the residue sum (an integer);
    index_value is numerator / n as an exact rational; witness_unit is the
    smallest unit attaining the minimum.
    """

    numerator: int
    index_value: Fraction
    witness_unit: int


def _residue_sum(n: int, terms: tuple[int, ...], u: int) -> int:
    # (u * x) % n is never 0 here: u is a unit and every term is nonzero.
    return sum((u * x) % n for x in terms)


def unit_norm(seq: ZsSequence, u: int) -> Fraction:
    """Exact k-term residue sum over n for the given unit."""
    if not is_unit(u, seq.n):
        raise NotAUnitError(f"{u} is not a unit mod {seq.n}")
    return Fraction(_residue_sum(seq.n, seq.terms, u), seq.n)


def _min_norm(
    n: int, terms: tuple[int, ...], early_exit: bool = True
) -> tuple[int, int]:
    """(minimum residue sum, smallest attaining unit) over all units.

    For zero-sum sequences the sum is always a multiple of n and at least
    n * ceil(k / n), so the scan may stop at the first unit hitting that
    floor; ascending order makes the early exit return the smallest witness.
    """
    k = len(terms)
    floor = n * ((k + n - 1) // n) if sum(terms) % n == 0 else None
    best = 0
    best_unit = 0
    for u in range(1, n):
        if math.gcd(u, n) != 1:
            continue
        s = _residue_sum(n, terms, u)
        if early_exit and s == floor:
            return s, u
        if best_unit == 0 or s < best:
            best, best_unit = s, u
    return best, best_unit


def index_oracle(seq: ZsSequence, early_exit: bool = True) -> IndexResult:
    """Exact minimum of unit_norm over all units, with smallest witness.

    early_exit stops the scan once the theoretical floor is reached; pass
    False to force the full scan (the result is identical either way).
    """
    numerator, unit = _min_norm(seq.n, seq.terms, early_exit)
    return IndexResult(
        numerator=numerator,
        index_value=Fraction(numerator, seq.n),
        witness_unit=unit,
    )


def _require_length4_unit(seq: ZsSequence, m: int) -> None:
    if seq.k != 4:
        raise ValueError(f"criterion applies to length-4 sequences, got k={seq.k}")
    if not is_unit(m, seq.n):
        raise NotAUnitError(f"{m} is not a unit mod {seq.n}")


def one_side_criterion(seq: ZsSequence, m: int) -> bool:
    """At most one of the four residues |m*x_i|_n lies on one side of n/2.

    Comparisons use 2*value against n in integers; for even n a value equal
    to n/2 counts as neither side (theorem paths always have n odd).
    """
    _require_length4_unit(seq, m)
    n = seq.n
    below = 0
    above = 0
    for x in seq.terms:
        v = (m * x) % n
        if 2 * v < n:
            below += 1
        elif 2 * v > n:
            above += 1
    return below <= 1 or above <= 1


def triple_sum_criterion(seq: ZsSequence, m: int) -> bool:
    """The four residues |m*x_i|_n sum to exactly 3n.

    When true, the unit n - m sends the residue sum to n, so the sequence
    has index 1 with explicit witness n - m.
    """
    _require_length4_unit(seq, m)
    return _residue_sum(seq.n, seq.terms, m) == 3 * seq.n
