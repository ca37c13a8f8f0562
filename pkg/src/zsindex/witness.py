"""Constructive witness search: progression families of units, scaling
witnesses that push residues below half the modulus, and the certifying
dispatcher that assembles them into an index-1 certificate.

The recurring gadget is the family of units 1 + t * (n // p**(s+1)) for
t in [0, p-1].  Members fix every residue divisible by p**(s+1), and for a
residue v coprime to p some member scales v below n/2.  The dispatcher
composes these moves, guided by the gcd profile of the sequence, and
validates the result against the index oracle before returning it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import _is_prime, canonical_residue
from .errors import (
    CertificateValidationError,
    HypothesesNotMetError,
    InvalidFamilyError,
    LemmaViolationError,
)
from .index import index_oracle
from .sequences import ZsSequence, gcd_profile, is_minimal_zero_sum

__all__ = [
    "OrbitFamilySums",
    "UnitCertificate",
    "WitnessFamily",
    "WitnessTrace",
    "certificate_line",
    "certify_index_one",
    "decompose_by_step",
    "family_unit_below_half",
    "lifted_unit_below_half",
    "orbit_family_sums",
    "pair_unit_below_half",
    "straddle_offsets",
    "unit_family",
]

CRITERION_SUM_N = "SumN"
CRITERION_ONE_SIDE = "AtMostOneSide"
CRITERION_SUM_3N = "Sum3N"


# ---------------------------------------------------------------------------
# Progression families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessFamily:
    """The progression 1 + t*step, t in [0, prime-1], intersected with U(n).

    step is n // prime**(exponent+1).  unit_offsets lists the offsets t whose
    member is a unit: all of them when prime divides step, all but exactly
    one otherwise.
    """

    n: int
    prime: int
    exponent: int
    step: int
    unit_offsets: tuple[int, ...]

    def members(self) -> tuple[int, ...]:
        return tuple(1 + t * self.step for t in self.unit_offsets)

    @property
    def excluded_offsets(self) -> tuple[int, ...]:
        present = set(self.unit_offsets)
        return tuple(t for t in range(self.prime) if t not in present)


def unit_family(n: int, p: int, s: int) -> WitnessFamily:
    """Build the (p, s) family for modulus n; requires p**(s+1) | n."""
    if s < 0:
        raise InvalidFamilyError(f"exponent must be >= 0, got {s}")
    if not _is_prime(p) or n % p != 0:
        raise InvalidFamilyError(f"{p} is not a prime divisor of {n}")
    power = p ** (s + 1)
    if n % power != 0:
        raise InvalidFamilyError(f"{p}**{s + 1} does not divide {n}")
    step = n // power
    offsets = tuple(t for t in range(p) if math.gcd(1 + t * step, n) == 1)
    return WitnessFamily(n=n, prime=p, exponent=s, step=step, unit_offsets=offsets)


def _require_coprime_six(n: int) -> None:
    if n % 2 == 0 or n % 3 == 0:
        raise ValueError(f"modulus must be coprime to 6, got {n}")


def straddle_offsets(v: int, p: int, n: int) -> tuple[int, int]:
    """Smallest offsets (k, j) in the (p, 0) family whose shifts straddle n/2.

    k is the smallest t with 1 + t*step a unit and |v + t*step|_n < n/2;
    j likewise with |v + t*step|_n > n/2.  Exhausting the family without
    finding one side must never happen for composite n coprime to 6.
    """
    _require_coprime_six(n)
    if n % p != 0:
        raise ValueError(f"{p} is not a prime divisor of {n}")
    if n == p:
        raise ValueError(f"modulus {n} must be composite")
    if not 1 <= v <= n - 1:
        raise ValueError(f"residue {v} outside [1, {n - 1}]")
    fam = unit_family(n, p, 0)
    below = above = None
    for t in fam.unit_offsets:
        r = canonical_residue(v + t * fam.step, n)
        if below is None and 2 * r < n:
            below = t
        if above is None and 2 * r > n:
            above = t
        if below is not None and above is not None:
            return below, above
    raise LemmaViolationError(
        f"shift family ({p}, 0) of {n} left all of v={v} on one side"
    )


def family_unit_below_half(v: int, p: int, n: int) -> int:
    """Smallest-offset unit y = 1 + t*(n//p) with |y*v|_n < n/2.

    Requires gcd(v, p) = 1: the family then reaches v's whole shifted orbit
    as a set, which meets the lower half for every modulus coprime to 6.
    """
    _require_coprime_six(n)
    if n % p != 0:
        raise ValueError(f"{p} is not a prime divisor of {n}")
    if not 1 <= v <= n - 1:
        raise ValueError(f"residue {v} outside [1, {n - 1}]")
    if math.gcd(v, p) != 1:
        raise ValueError(f"residue {v} must be coprime to {p}")
    step = n // p
    for t in range(p):
        y = 1 + t * step
        if math.gcd(y, n) != 1:
            continue
        if 2 * ((y * v) % n) < n:
            return y
    raise LemmaViolationError(
        f"scale family ({p}, 0) of {n} cannot push v={v} below {n}/2"
    )


def lifted_unit_below_half(beta: int, p: int, s: int, n: int) -> int:
    """Smallest-offset unit y = 1 + t*(n//p**(s+1)) with |y*beta|_n < n/2.

    Requires p**s | beta, p**(s+1) does not divide beta, and p**(s+1) | n.
    Divide out p**s: with n1 = n // p**s and beta1 = beta // p**s, a family
    unit of n1 scaling beta1 below n1/2 is also a unit of n and scales beta
    below n/2 (the residue just picks up the factor p**s back).
    """
    power = p**s
    if not 1 <= beta <= n - 1:
        raise ValueError(f"residue {beta} outside [1, {n - 1}]")
    if beta % power != 0 or beta % (power * p) == 0:
        raise ValueError(f"{beta} is not exactly divisible by {p}**{s}")
    if n % (power * p) != 0:
        raise ValueError(f"{p}**{s + 1} does not divide {n}")
    n1 = n // power
    y = family_unit_below_half(beta // power, p, n1)
    r = (y * beta) % n
    if math.gcd(y, n) != 1 or 2 * r >= n or r == 0:
        raise LemmaViolationError(
            f"lifted witness {y} failed for beta={beta}, p={p}, s={s}, n={n}"
        )
    return y


def decompose_by_step(v: int, step: int) -> tuple[int, int]:
    """Write v = t*step + r with 0 <= r < step."""
    if v < 0:
        raise ValueError(f"residue must be nonnegative, got {v}")
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    return divmod(v, step)


# ---------------------------------------------------------------------------
# Pair witness for terms sharing their whole gcd
# ---------------------------------------------------------------------------


def _normalizing_unit(n: int, x: int, target: int) -> int:
    """Smallest unit w with w*x congruent to target mod n.

    Exists iff gcd(n, x) == gcd(n, target) =: g.  All solutions form one
    class mod n/g; the scan lifts the class representative to the smallest
    member coprime to n.
    """
    g = math.gcd(n, x)
    if math.gcd(n, target) != g:
        raise ValueError(
            f"cannot send {x} to {target} mod {n}: gcd profiles differ"
        )
    m1 = n // g
    w = (target // g) * pow(x // g, -1, m1) % m1
    while math.gcd(w, n) != 1:
        w += m1
    return w


def pair_unit_below_half(x1: int, x2: int, n: int) -> int:
    """A unit u with both |u*x1|_n and |u*x2|_n below n/2.

    Requires gcd(n, x1) == gcd(n, x2) = d > 1 and x1 + x2 not 0 mod n.
    Normalize x1 to d by a unit w; then x2 maps to n - kd with k >= 2, and
    doubling d until k*d lands in [n/4, n/2) gives u0 = 2**(s+1) with both
    images below n/2.  The returned unit composes u0 with w.
    """
    _require_coprime_six(n)
    d = math.gcd(n, x1)
    if d != math.gcd(n, x2) or d <= 1:
        raise ValueError(
            f"terms must share their whole gcd with {n}: "
            f"got {math.gcd(n, x1)} and {math.gcd(n, x2)}"
        )
    if (x1 + x2) % n == 0:
        raise ValueError(f"{x1} + {x2} is 0 mod {n}")
    if 2 * x1 < n and 2 * x2 < n:
        return 1
    w = _normalizing_unit(n, x1, d)
    r2 = (w * x2) % n
    if 2 * r2 < n:
        u = w
    else:
        kd = n - r2
        s = 0
        while (kd << (s + 2)) < n:  # smallest s with 2**s * kd >= n/4
            s += 1
        u = (pow(2, s + 1, n) * w) % n
    if 2 * ((u * x1) % n) >= n or 2 * ((u * x2) % n) >= n:
        raise LemmaViolationError(
            f"doubling construction failed for ({x1}, {x2}) mod {n}"
        )
    return u


# ---------------------------------------------------------------------------
# Family diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitFamilySums:
    """Per-member norms of a sequence across one progression family.

    entries pairs each unit offset t with the integer norm of the scaled
    sequence; total is n times the sum of those norms (the averaging
    diagnostic over the family).
    """

    family: WitnessFamily
    entries: tuple[tuple[int, int], ...]
    total: int


def orbit_family_sums(seq: ZsSequence, p: int, s: int) -> OrbitFamilySums:
    if seq.k != 4:
        raise ValueError(f"family sums need a length-4 sequence, got k={seq.k}")
    n = seq.n
    if sum(seq.terms) % n != 0:
        raise ValueError("family sums need a zero-sum sequence")
    fam = unit_family(n, p, s)
    entries = []
    for t in fam.unit_offsets:
        y = 1 + t * fam.step
        total = sum((y * x) % n for x in seq.terms)
        entries.append((t, total // n))
    return OrbitFamilySums(
        family=fam, entries=tuple(entries), total=n * sum(k for _, k in entries)
    )


# ---------------------------------------------------------------------------
# Certificates and the dispatcher
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitCertificate:
    """A unit m plus the criterion its transformed residues satisfy.

    transformed lists |m*x_i|_n in the order of the sequence's (ascending)
    terms.  criterion is "SumN" (residues sum to n), "Sum3N" (sum 3n), or
    "AtMostOneSide" (at most one residue on one side of n/2); each proves
    index 1.
    """

    m: int
    criterion: str
    transformed: tuple[int, ...]
    index_claim: int = 1


@dataclass(frozen=True)
class WitnessTrace:
    """Which construction produced the certificate.

    path holds the case labels in dispatch order; multipliers the units
    composed along the way, whose product mod n is the certificate's m.
    """

    path: tuple[str, ...]
    multipliers: tuple[int, ...]


def certificate_line(seq: ZsSequence, cert: UnitCertificate, trace: WitnessTrace) -> str:
    """One-line serialization used by the CLI and reports."""
    return (
        f"{seq.text} m={cert.m} criterion={cert.criterion} "
        f"path={','.join(trace.path)}"
    )


def _criterion_label(n: int, values: tuple[int, ...]) -> str | None:
    total = sum(values)
    if total == n:
        return CRITERION_SUM_N
    if total == 3 * n:
        return CRITERION_SUM_3N
    below = sum(1 for v in values if 2 * v < n)
    above = sum(1 for v in values if 2 * v > n)
    if below <= 1 or above <= 1:
        return CRITERION_ONE_SIDE
    return None


def _family_criteria_hit(n: int, terms: tuple[int, ...], p: int) -> int | None:
    """Smallest-offset family unit whose transformed residues meet a criterion."""
    step = n // p
    for t in range(p):
        y = 1 + t * step
        if math.gcd(y, n) != 1:
            continue
        values = tuple((y * x) % n for x in terms)
        if _criterion_label(n, values) is not None:
            return y
    return None


def _pair_gcd_chain(
    n: int, terms: tuple[int, ...], i1: int, i2: int
) -> tuple[int, list[str], list[int]]:
    """Certify via a pair of terms whose gcds with n share a factor.

    Stage one sends both pair members below n/2: directly by the doubling
    construction when the two gcds are equal, otherwise by normalizing the
    larger-gcd term to its gcd and lifting the other below n/2 through the
    appropriate (p, s) family.  Stage two fixes the pair (their residues
    are divisible by a prime of the shared gcd) while a (p, 0) family
    member scales a third term below n/2.  Three residues below n/2 leave
    at most one above, which certifies index 1.
    """
    f1 = math.gcd(n, terms[i1])
    f2 = math.gcd(n, terms[i2])
    if f2 > f1:
        i1, i2 = i2, i1
        f1, f2 = f2, f1
    d = math.gcd(f1, f2)
    labels: list[str] = []
    mults: list[int] = []
    current = list(terms)
    m = 1

    def apply(u: int, label: str) -> None:
        nonlocal m
        if u == 1:
            return
        for i in range(4):
            current[i] = (u * current[i]) % n
        m = (m * u) % n
        labels.append(label)
        mults.append(u)

    if f1 == f2:
        apply(pair_unit_below_half(current[i1], current[i2], n), "pair-doubling")
    else:
        apply(_normalizing_unit(n, current[i1], f1), "normalize-lead")
        p_lift = min(p for p, _ in _prime_factors(f1 // d))
        s = 0
        while current[i2] % p_lift ** (s + 1) == 0:
            s += 1
        apply(lifted_unit_below_half(current[i2], p_lift, s, n), "lift-scale")
    # Both pair members now sit below n/2; scale a remaining large term.
    p_scale = min(p for p, _ in _prime_factors(d))
    for i in range(4):
        if i in (i1, i2):
            continue
        if 2 * current[i] > n:
            apply(family_unit_below_half(current[i], p_scale, n), "family-scale")
            break
    return m, labels, mults


def _prime_factors(m: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _largest_prime(m: int) -> int:
    return _prime_factors(m)[-1][0]


def _family_phase(
    n: int, terms: tuple[int, ...], lead: int, label: str
) -> tuple[int, list[str], list[int]] | None:
    """Search progression families for a criterion hit, after normalizing
    the leading term.

    Attempt one normalizes the lead to its gcd with n (so the family fixes
    it below n/2) and scans the family of the lead gcd's largest prime.
    Attempt two re-normalizes the lead to (n - f) / 2, when a unit can send
    it there, and scans the same family; that placement makes the averaging
    bound bite and is exactly where sum-3n hits appear.
    """
    f_lead = math.gcd(n, terms[lead])
    p = _largest_prime(f_lead)

    w = _normalizing_unit(n, terms[lead], f_lead)
    scaled = tuple((w * x) % n for x in terms)
    y = _family_criteria_hit(n, scaled, p)
    if y is not None:
        labels = (["normalize-lead"] if w != 1 else []) + [label]
        return (y * w) % n, labels, [u for u in (w, y) if u != 1] or [1]

    centered = (n - f_lead) // 2
    if centered >= 1 and math.gcd(n, centered) == f_lead:
        w2 = _normalizing_unit(n, terms[lead], centered)
        scaled = tuple((w2 * x) % n for x in terms)
        y = _family_criteria_hit(n, scaled, p)
        if y is not None:
            mults = [u for u in (w2, y) if u != 1] or [1]
            return (y * w2) % n, ["center-lead", "centered-family"], mults
    return None


def _fallback_scan(n: int, terms: tuple[int, ...]) -> int:
    for m in range(1, n):
        if math.gcd(m, n) != 1:
            continue
        values = tuple((m * x) % n for x in terms)
        if _criterion_label(n, values) is not None:
            return m
    raise CertificateValidationError(
        f"no unit certifies {terms} mod {n}: index exceeds 1"
    )


def _finalize(
    seq: ZsSequence,
    m: int,
    path: list[str],
    mults: list[int],
    oracle_check: bool,
) -> tuple[UnitCertificate, WitnessTrace]:
    n = seq.n
    m = m % n
    values = tuple((m * x) % n for x in seq.terms)
    label = _criterion_label(n, values)
    if label is None or math.gcd(m, n) != 1:
        raise CertificateValidationError(
            f"candidate unit {m} does not certify {seq.text}"
        )
    if oracle_check and index_oracle(seq).index_value != 1:
        raise CertificateValidationError(
            f"criterion hit but oracle disagrees on {seq.text}"
        )
    product = 1
    for u in mults:
        product = (product * u) % n
    if product != m:
        raise CertificateValidationError("trace multipliers do not compose to m")
    cert = UnitCertificate(m=m, criterion=label, transformed=values)
    trace = WitnessTrace(path=tuple(path), multipliers=tuple(mults))
    return cert, trace


def certify_index_one(
    seq: ZsSequence, oracle_check: bool = True
) -> tuple[UnitCertificate, WitnessTrace]:
    """Produce a validated index-1 certificate by structured search.

    Admits minimal zero-sum length-4 sequences over composite n coprime to
    6 whose terms have overall gcd 1 with some term sharing a factor with n,
    and (over two-prime moduli) the case where every term shares a factor.
    The dispatcher follows the gcd-profile case split; a full unit scan
    ("fallback" in the trace) only runs when no structured case fires, and
    campaigns treat any fallback as a red flag.
    """
    ctx = seq.context
    n = ctx.n
    if seq.k != 4:
        raise ValueError(f"certification needs a length-4 sequence, got k={seq.k}")
    if not ctx.coprime_to_six:
        raise HypothesesNotMetError(f"modulus {n} shares a factor with 6")
    if ctx.is_prime:
        raise HypothesesNotMetError(f"modulus {n} is prime")
    if not is_minimal_zero_sum(seq):
        raise HypothesesNotMetError(f"{seq.text} is not a minimal zero-sum sequence")
    profile = gcd_profile(seq)
    gcds = profile.term_gcds
    if profile.overall_gcd != 1:
        raise HypothesesNotMetError(
            f"terms of {seq.text} share the factor {profile.overall_gcd} with {n}"
        )
    if max(gcds) == 1:
        raise HypothesesNotMetError(f"all terms of {seq.text} are coprime to {n}")

    terms = seq.terms
    if sum(terms) == n:
        return _finalize(seq, 1, ["sum-n-immediate"], [1], oracle_check)

    two_prime_all = len(ctx.factors) == 2 and min(gcds) > 1
    if two_prime_all:
        # Every gcd is a power of one of the two primes, two terms apiece.
        by_prime: dict[int, list[int]] = {p: [] for p in ctx.primes}
        for i, g in enumerate(gcds):
            by_prime[_largest_prime(g)].append(i)
        if all(len(v) == 2 for v in by_prime.values()):
            pair = max(
                by_prime.values(), key=lambda idx: (max(gcds[i] for i in idx),)
            )
            i1, i2 = sorted(pair, key=lambda i: (-gcds[i], terms[i]))
            case = (
                "two-prime-equal-pair"
                if gcds[i1] == gcds[i2]
                else "two-prime-nested-pair"
            )
            try:
                m, labels, mults = _pair_gcd_chain(n, terms, i1, i2)
                return _finalize(seq, m, [case] + labels, mults, oracle_check)
            except LemmaViolationError:
                pass  # fall through to the general dispatch

    order = sorted(range(4), key=lambda i: (-gcds[i], terms[i]))
    lead = order[0]
    partners = [i for i in order[1:] if math.gcd(gcds[lead], gcds[i]) > 1]
    if partners:
        try:
            m, labels, mults = _pair_gcd_chain(n, terms, lead, partners[0])
            return _finalize(
                seq, m, ["shared-factor-pair"] + labels, mults, oracle_check
            )
        except LemmaViolationError:
            pass

    others = [i for i in order[1:] if gcds[i] > 1]
    if others and not partners:
        # Lead with the term whose gcd carries the largest prime overall.
        lead = max([lead] + others, key=lambda i: (_largest_prime(gcds[i]), gcds[i]))
        hit = _family_phase(n, terms, lead, "coprime-pair-family")
        if hit is not None:
            m, labels, mults = hit
            return _finalize(seq, m, labels, mults, oracle_check)
    elif not partners:
        hit = _family_phase(n, terms, lead, "lone-nonunit-family")
        if hit is not None:
            m, labels, mults = hit
            return _finalize(seq, m, labels, mults, oracle_check)

    m = _fallback_scan(n, terms)
    return _finalize(seq, m, ["fallback"], [m], oracle_check)
