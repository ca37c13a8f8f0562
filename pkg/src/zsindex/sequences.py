"""Sequences over Z_n: zero-sum and minimality predicates, gcd profiles,
enumeration of minimal zero-sum length-4 sequences, unit scaling, and
canonical orbit representatives.

A sequence is an unordered multiset of nonzero residues; ascending tuple
order is the canonical storage form.  The text format used everywhere
(CLI, reports, certificates) is ``n:x1,x2,...,xk`` with ascending terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .arith import GroupContext, canonical_residue, factorize, is_unit
from .errors import NotAUnitError

__all__ = [
    "GcdProfile",
    "ZsSequence",
    "canonical_rep",
    "enumerate_minimal4",
    "enumerate_orbit_reps",
    "gcd_profile",
    "is_minimal_zero_sum",
    "is_zero_sum",
    "parse_sequence",
    "scale",
]

_MAX_LEN = 16  # cap for the subset-scan minimality oracle


@dataclass(frozen=True)
class ZsSequence:
    """A length-k multiset of nonzero residues over a GroupContext.

    Terms are stored ascending, each in [1, n-1].  Length 4 on all theorem
    paths; general k <= 16 is supported for the index oracle.
    """

    context: GroupContext
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.context.n
        k = len(self.terms)
        if not 1 <= k <= _MAX_LEN:
            raise ValueError(f"sequence length must be in [1, {_MAX_LEN}], got {k}")
        prev = 1
        for x in self.terms:
            if not 1 <= x <= n - 1:
                raise ValueError(f"term {x} outside [1, {n - 1}]")
            if x < prev:
                raise ValueError("terms must be ascending")
            prev = x

    @classmethod
    def from_terms(cls, n: int, terms) -> "ZsSequence":
        """Build from arbitrary integers, reducing each to [1, n-1].

        Integers in the zero class are rejected: terms must be nonzero
        residues.
        """
        ctx = GroupContext.for_modulus(n)
        reduced = []
        for x in terms:
            r = canonical_residue(x, n)
            if r == n:
                raise ValueError(f"term {x} reduces to the zero class mod {n}")
            reduced.append(r)
        return cls(context=ctx, terms=tuple(sorted(reduced)))

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def text(self) -> str:
        return f"{self.n}:{','.join(str(x) for x in self.terms)}"


def parse_sequence(text: str) -> ZsSequence:
    """Parse ``n:x1,x2,...,xk``; terms are sorted if not already ascending."""
    try:
        head, _, tail = text.partition(":")
        n = int(head)
        terms = [int(part) for part in tail.split(",")]
    except ValueError as exc:
        raise ValueError(f"malformed sequence text {text!r}") from exc
    if not tail:
        raise ValueError(f"malformed sequence text {text!r}")
    return ZsSequence.from_terms(n, terms)


def is_zero_sum(seq: ZsSequence) -> bool:
    """True iff the term sum is 0 mod n."""
    return sum(seq.terms) % seq.n == 0


def is_minimal_zero_sum(seq: ZsSequence) -> bool:
    """True iff zero-sum and no proper nonempty sub-multiset sums to 0 mod n.

    Scans all 2**k - 2 proper nonempty sub-multisets; k is capped at 16 by
    the ZsSequence constructor so the scan stays bounded.
    """
    n = seq.n
    terms = seq.terms
    if sum(terms) % n != 0:
        return False
    k = len(terms)
    for mask in range(1, (1 << k) - 1):
        s = 0
        for i in range(k):
            if mask >> i & 1:
                s += terms[i]
        if s % n == 0:
            return False
    return True


@dataclass(frozen=True)
class GcdProfile:
    """Per-term gcds with the modulus and their interaction structure.

    term_gcds[i] is gcd(n, x_i); pair_gcds maps (i, j) with i < j to
    gcd(term_gcds[i], term_gcds[j]); prime_support[i] is the factorization
    of term_gcds[i].
    """

    term_gcds: tuple[int, ...]
    overall_gcd: int
    pair_gcds: dict
    prime_support: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def max_term_gcd(self) -> int:
        return max(self.term_gcds)

    @property
    def overall_coprime(self) -> bool:
        return self.overall_gcd == 1

    @property
    def mixed_hypothesis(self) -> bool:
        """Overall gcd 1 while some single term shares a factor with n."""
        return self.overall_gcd == 1 and max(self.term_gcds) > 1


def gcd_profile(seq: ZsSequence) -> GcdProfile:
    n = seq.n
    gcds = tuple(math.gcd(n, x) for x in seq.terms)
    overall = 0
    for g in gcds:
        overall = math.gcd(overall, g)
    pairs = {
        (i, j): math.gcd(gcds[i], gcds[j])
        for i in range(len(gcds))
        for j in range(i + 1, len(gcds))
    }
    support = tuple(tuple(factorize(g)) for g in gcds)
    return GcdProfile(
        term_gcds=gcds, overall_gcd=overall, pair_gcds=pairs, prime_support=support
    )


def _scaled_sorted(n: int, terms: tuple[int, ...], u: int) -> tuple[int, ...]:
    # u coprime to n and terms nonzero mod n, so no product lands on 0.
    return tuple(sorted((u * x) % n for x in terms))


def scale(seq: ZsSequence, u: int) -> ZsSequence:
    """Multiply every term by the unit u and re-sort.

    Unit scaling permutes the nonzero residues, so it preserves both the
    zero-sum property and minimality.
    """
    if not is_unit(u, seq.n):
        raise NotAUnitError(f"{u} is not a unit mod {seq.n}")
    return ZsSequence(context=seq.context, terms=_scaled_sorted(seq.n, seq.terms, u))


def _minimal4_tuples(n: int) -> Iterator[tuple[int, int, int, int]]:
    """All minimal zero-sum 4-multisets over [1, n-1], ascending lex order.

    The fourth term is derived from the first three, and only completions
    with x4 >= x3 are kept, so each multiset appears exactly once.  For a
    zero-sum 4-sequence a proper subset sums to zero iff some pair does
    (singletons are nonzero and triples are complements of singletons), and
    the three pair checks below cover all six pairs via complements.
    """
    if n < 5:
        raise ValueError(f"enumeration needs n >= 5, got {n}")
    for x1 in range(1, n):
        nx1 = n - x1
        for x2 in range(x1, n):
            s12 = x1 + x2
            if s12 == n:  # pair (x1, x2) would already be zero-sum
                continue
            c = n - s12 % n  # residue of -(x1 + x2) in [1, n-1]
            # x3 < c branch: x4 = c - x3, valid while x4 >= x3
            top_a = min(c // 2, c - 1)
            for x3 in range(x2, top_a + 1):
                x4 = c - x3
                if x3 != nx1 and x4 != nx1:
                    yield (x1, x2, x3, x4)
            # x3 > c branch: x4 = c + n - x3 (x3 == c would make x4 zero)
            lo_b = max(x2, c + 1)
            top_b = (c + n) // 2
            for x3 in range(lo_b, top_b + 1):
                x4 = c + n - x3
                if x3 != nx1 and x4 != nx1:
                    yield (x1, x2, x3, x4)


def enumerate_minimal4(n: int) -> Iterator[ZsSequence]:
    """Every minimal zero-sum length-4 sequence over Z_n, once, in lex order."""
    ctx = GroupContext.for_modulus(n)
    for terms in _minimal4_tuples(n):
        yield ZsSequence(context=ctx, terms=terms)


def canonical_rep(seq: ZsSequence) -> ZsSequence:
    """Lexicographically smallest sorted multiset among all unit multiples.

    Constant on orbits: canonical_rep(scale(S, u)) == canonical_rep(S) for
    every unit u.  Scans all phi(n) units; correctness over cleverness at
    desk scale.
    """
    n = seq.n
    best = min(
        _scaled_sorted(n, seq.terms, u) for u in range(1, n) if math.gcd(u, n) == 1
    )
    return ZsSequence(context=seq.context, terms=best)


def enumerate_orbit_reps(n: int) -> Iterator[ZsSequence]:
    """One representative per unit orbit of minimal length-4 sequences.

    The enumeration stream is in lex order, so the first member of each
    orbit it meets is exactly the canonical representative; later members
    are recognized by marking the whole orbit when the rep appears.
    """
    ctx = GroupContext.for_modulus(n)
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    seen: set[tuple[int, int, int, int]] = set()
    for terms in _minimal4_tuples(n):
        if terms in seen:
            continue
        seen.update(_scaled_sorted(n, terms, u) for u in units)
        yield ZsSequence(context=ctx, terms=terms)
