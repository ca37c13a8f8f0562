"""Verification campaigns: exhaustive or sampled checks that every minimal
zero-sum length-4 sequence in scope has index 1, plus the counterexample
scanner for moduli sharing a factor with 6.

Exhaustive runs deduplicate by unit orbit by default: the index, the gcd
profile, and every filter below are constant on orbits, so checking one
representative per orbit (the lexicographically least member) covers the
whole orbit.  Records and verdicts are pure functions of (range, mode,
filter, seed); wall-clock time is reported but excluded from comparisons.
"""

from __future__ import annotations

import csv
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

from .arith import GroupContext
from .errors import UsageError
from .index import _min_norm
from .sequences import ZsSequence, _minimal4_tuples, _scaled_sorted, canonical_rep
from .witness import certify_index_one

__all__ = [
    "CampaignReport",
    "VerificationRecord",
    "Violation",
    "admissible_modulus",
    "campaign",
    "counterexample_scan",
    "verify_n",
    "write_report_jsonl",
    "write_summary_csv",
]

FILTERS = ("theorem13", "theorem31", "all", "conjecture")
MODES = ("exhaustive", "sampled")


@dataclass(frozen=True)
class Violation:
    sequence: str
    index: int


@dataclass(frozen=True)
class VerificationRecord:
    """Per-modulus campaign result.

    sequences_checked counts admitted sequences (each one covered directly,
    or through its orbit representative in orbit mode); orbits_checked is
    None when orbit deduplication was off.  Violations hold canonical orbit
    representatives, so orbit and full modes agree on them.
    """

    n: int
    mode: str
    filter: str
    sequences_checked: int
    orbits_checked: int | None
    violations: tuple[Violation, ...]
    fallback_uses: int
    max_index_seen: int
    elapsed: float = field(compare=False)

    def to_json_dict(self) -> dict:
        out = asdict(self)
        out["violations"] = [asdict(v) for v in self.violations]
        return out


@dataclass(frozen=True)
class CampaignReport:
    records: dict[int, VerificationRecord]
    mode: str
    filter: str
    seed: int | None
    totals: dict[str, int]
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _theorem13_admits(n: int, gcds: tuple[int, ...], overall: int) -> bool:
    return overall == 1 and max(gcds) > 1


def admissible_modulus(n: int, filter: str) -> bool:
    """Whether a campaign over the given filter should visit this modulus."""
    if filter not in FILTERS:
        raise UsageError(f"unknown filter {filter!r}")
    if n < 5:
        return False
    ctx = GroupContext.for_modulus(n)
    if filter == "theorem13":
        return ctx.coprime_to_six and ctx.is_composite
    if filter == "theorem31":
        return ctx.coprime_to_six and len(ctx.factors) == 2
    if filter == "conjecture":
        return ctx.coprime_to_six
    return True  # "all"


def _certify_admissible(ctx: GroupContext, gcds: tuple[int, ...], overall: int) -> bool:
    # Mirrors the dispatcher's hypotheses: either the mixed profile, or the
    # all-terms-entangled profile over a two-prime-power modulus.
    if not ctx.coprime_to_six or ctx.is_prime or overall != 1:
        return False
    if max(gcds) > 1:
        return True
    return False


def _index_floor(n: int) -> int:
    return n  # length-4 sequences over n >= 5: minimum residue sum is n


def _sample_minimal4(rng: random.Random, n: int) -> tuple[int, int, int, int]:
    """One minimal zero-sum 4-multiset, uniform, by rejection.

    Draw a uniform 3-element multiset of [1, n-1] (three distinct values of
    [1, n+1] shifted back, the stars-and-bars bijection), derive the fourth
    term, and accept iff the result is a sorted minimal multiset.  All
    randomness flows through getrandbits so runs reproduce for a given seed.
    """
    m = n + 1
    k = m.bit_length()
    while True:
        picks: set[int] = set()
        while len(picks) < 3:
            r = rng.getrandbits(k)
            if r < m:
                picks.add(1 + r)
        c1, c2, c3 = sorted(picks)
        x1, x2, x3 = c1, c2 - 1, c3 - 2
        x4 = -(x1 + x2 + x3) % n
        if x4 == 0 or x4 < x3:
            continue
        if x1 + x2 == n or x1 + x3 == n or x1 + x4 == n:
            continue
        return (x1, x2, x3, x4)


def _verify_exhaustive(
    n: int, filter: str, orbit_dedup: bool
) -> tuple[int, int | None, list[Violation], int, int]:
    ctx = GroupContext.for_modulus(n)
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    run_certify = filter in ("theorem13", "theorem31")
    floor = _index_floor(n)
    seen: set[tuple[int, int, int, int]] = set()
    seq_checked = 0
    orbits_checked = 0 if orbit_dedup else None
    violations: list[Violation] = []
    violation_keys: set[tuple[int, ...]] = set()
    fallbacks = 0
    max_index = 0

    for terms in _minimal4_tuples(n):
        if orbit_dedup:
            if terms in seen:
                continue
            orbit = {_scaled_sorted(n, terms, u) for u in units}
            seen.update(orbit)
            weight = len(orbit)
        else:
            weight = 1

        gcds = tuple(math.gcd(n, x) for x in terms)
        overall = math.gcd(math.gcd(gcds[0], gcds[1]), math.gcd(gcds[2], gcds[3]))
        if filter == "theorem13" and not _theorem13_admits(n, gcds, overall):
            continue

        seq_checked += weight
        if orbit_dedup:
            orbits_checked += 1
        numerator, _ = _min_norm(n, terms)
        idx = numerator // n
        if idx > max_index:
            max_index = idx
        if numerator != floor:
            seq = ZsSequence(context=ctx, terms=terms)
            rep = terms if orbit_dedup else canonical_rep(seq).terms
            if rep not in violation_keys:
                violation_keys.add(rep)
                violations.append(
                    Violation(sequence=f"{n}:{','.join(map(str, rep))}", index=idx)
                )
            continue
        if run_certify and _certify_admissible(ctx, gcds, overall):
            seq = ZsSequence(context=ctx, terms=terms)
            _, trace = certify_index_one(seq)
            if "fallback" in trace.path:
                fallbacks += 1

    return seq_checked, orbits_checked, violations, fallbacks, max_index


def _verify_sampled(
    n: int, filter: str, samples: int, seed: int
) -> tuple[int, None, list[Violation], int, int]:
    ctx = GroupContext.for_modulus(n)
    rng = random.Random(f"{seed}:{n}")
    run_certify = filter in ("theorem13", "theorem31")
    floor = _index_floor(n)
    seq_checked = 0
    violations: list[Violation] = []
    violation_keys: set[tuple[int, ...]] = set()
    fallbacks = 0
    max_index = 0

    for _ in range(samples):
        terms = _sample_minimal4(rng, n)
        gcds = tuple(math.gcd(n, x) for x in terms)
        overall = math.gcd(math.gcd(gcds[0], gcds[1]), math.gcd(gcds[2], gcds[3]))
        if filter == "theorem13" and not _theorem13_admits(n, gcds, overall):
            continue
        seq_checked += 1
        numerator, _ = _min_norm(n, terms)
        idx = numerator // n
        if idx > max_index:
            max_index = idx
        if numerator != floor:
            seq = ZsSequence(context=ctx, terms=terms)
            rep = canonical_rep(seq).terms
            if rep not in violation_keys:
                violation_keys.add(rep)
                violations.append(
                    Violation(sequence=f"{n}:{','.join(map(str, rep))}", index=idx)
                )
            continue
        if run_certify and _certify_admissible(ctx, gcds, overall):
            seq = ZsSequence(context=ctx, terms=terms)
            _, trace = certify_index_one(seq)
            if "fallback" in trace.path:
                fallbacks += 1

    return seq_checked, None, violations, fallbacks, max_index


def verify_n(
    n: int,
    mode: str = "exhaustive",
    filter: str = "all",
    *,
    samples: int | None = None,
    seed: int | None = None,
    orbit_dedup: bool | None = None,
) -> VerificationRecord:
    """Check one modulus and return its record.

    Raises UsageError when the modulus fails the filter's preconditions
    (campaigns skip such moduli instead) or when sampled mode is missing
    its sample count or seed.
    """
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}")
    if not admissible_modulus(n, filter):
        raise UsageError(f"modulus {n} is not admissible for filter {filter!r}")
    start = time.perf_counter()
    if mode == "sampled":
        if samples is None or seed is None:
            raise UsageError("sampled mode needs samples and seed")
        checked, orbits, violations, fallbacks, max_index = _verify_sampled(
            n, filter, samples, seed
        )
    else:
        if orbit_dedup is None:
            orbit_dedup = True
        checked, orbits, violations, fallbacks, max_index = _verify_exhaustive(
            n, filter, orbit_dedup
        )
    elapsed = time.perf_counter() - start
    return VerificationRecord(
        n=n,
        mode=mode,
        filter=filter,
        sequences_checked=checked,
        orbits_checked=orbits,
        violations=tuple(violations),
        fallback_uses=fallbacks,
        max_index_seen=max_index,
        elapsed=elapsed,
    )


def _verify_worker(args: tuple) -> VerificationRecord:
    n, mode, filter, samples, seed, orbit_dedup = args
    return verify_n(
        n, mode, filter, samples=samples, seed=seed, orbit_dedup=orbit_dedup
    )


def campaign(
    n_from: int,
    n_to: int,
    mode: str = "exhaustive",
    filter: str = "all",
    *,
    samples: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
    orbit_dedup: bool | None = None,
) -> CampaignReport:
    """Run verify_n over every admissible modulus in [n_from, n_to].

    Work is split across processes by modulus when jobs > 1; records merge
    in ascending order regardless of completion order, so reports are
    identical for any job count.
    """
    if n_from > n_to:
        raise UsageError(f"empty range [{n_from}, {n_to}]")
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}")
    if mode == "sampled" and (samples is None or seed is None):
        raise UsageError("sampled mode needs samples and seed")
    moduli = [
        n for n in range(max(n_from, 5), n_to + 1) if admissible_modulus(n, filter)
    ]
    tasks = [(n, mode, filter, samples, seed, orbit_dedup) for n in moduli]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_verify_worker, tasks))
    else:
        records = [_verify_worker(task) for task in tasks]
    records.sort(key=lambda r: r.n)
    totals = {
        "sequences_checked": sum(r.sequences_checked for r in records),
        "orbits_checked": sum(r.orbits_checked or 0 for r in records),
        "violations": sum(len(r.violations) for r in records),
        "fallback_uses": sum(r.fallback_uses for r in records),
    }
    clean = totals["violations"] == 0
    if filter in ("theorem13", "theorem31"):
        clean = clean and totals["fallback_uses"] == 0
    return CampaignReport(
        records={r.n: r for r in records},
        mode=mode,
        filter=filter,
        seed=seed,
        totals=totals,
        verdict="pass" if clean else "fail",
    )


def counterexample_scan(
    n_from: int, n_to: int, *, first_only: bool = False
) -> list[tuple[int, str, int]]:
    """Find minimal length-4 sequences with index >= 2 over moduli sharing a
    factor with 6.

    Returns (n, sequence text, index) triples in ascending (n, lex) order;
    moduli coprime to 6 are skipped, as are n < 5 (too small to enumerate).
    With first_only, reports at most one finding per modulus.
    """
    if n_from > n_to:
        raise UsageError(f"empty range [{n_from}, {n_to}]")
    findings: list[tuple[int, str, int]] = []
    for n in range(max(n_from, 5), n_to + 1):
        if n % 2 != 0 and n % 3 != 0:
            continue
        floor = _index_floor(n)
        for terms in _minimal4_tuples(n):
            numerator, _ = _min_norm(n, terms)
            if numerator != floor:
                text = f"{n}:{','.join(map(str, terms))}"
                findings.append((n, text, numerator // n))
                if first_only:
                    break
    return findings


def write_report_jsonl(report: CampaignReport, path: str) -> None:
    """One JSON object per modulus, ascending."""
    with open(path, "w", encoding="utf-8") as fh:
        for n in sorted(report.records):
            fh.write(json.dumps(report.records[n].to_json_dict()) + "\n")


def write_summary_csv(report: CampaignReport, path: str) -> None:
    """Compact per-modulus summary: n, checked, violations, fallbacks, elapsed."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "checked", "violations", "fallbacks", "elapsed"])
        for n in sorted(report.records):
            rec = report.records[n]
            writer.writerow(
                [
                    rec.n,
                    rec.sequences_checked,
                    len(rec.violations),
                    rec.fallback_uses,
                    f"{rec.elapsed:.3f}",
                ]
            )
