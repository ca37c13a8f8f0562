"""Command-line surface.

Subcommands:
  index     <n:x1,x2,x3,x4>  print the exact index and smallest witness unit
  witness   <n:x1,x2,x3,x4>  print an index-1 certificate line
  enumerate <n> [--orbits]   stream minimal length-4 sequences
  verify    --from A --to B --filter F --mode M ...   run a campaign
  scan      --from A --to B [--first-only]            counterexample scan

Exit codes: 0 pass, 2 campaign violations (or fallback on a theorem filter),
1 usage or hypothesis errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .campaign import (
    FILTERS,
    MODES,
    campaign,
    counterexample_scan,
    write_report_jsonl,
    write_summary_csv,
)
from .errors import HypothesesNotMetError, UsageError, ZsIndexError
from .index import index_oracle
from .sequences import enumerate_minimal4, enumerate_orbit_reps, parse_sequence
from .witness import certificate_line, certify_index_one

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="zsindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="exact index of a sequence")
    p_index.add_argument("sequence", help="sequence text, e.g. 35:5,10,24,31")
    p_index.set_defaults(func=_cmd_index)

    p_witness = sub.add_parser("witness", help="certify index 1 constructively")
    p_witness.add_argument("sequence", help="sequence text, e.g. 35:5,10,24,31")
    p_witness.set_defaults(func=_cmd_witness)

    p_enum = sub.add_parser("enumerate", help="stream minimal length-4 sequences")
    p_enum.add_argument("n", type=int)
    p_enum.add_argument(
        "--orbits", action="store_true", help="one representative per unit orbit"
    )
    p_enum.set_defaults(func=_cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument("--from", dest="n_from", type=int, required=True)
    p_verify.add_argument("--to", dest="n_to", type=int, required=True)
    p_verify.add_argument("--filter", choices=FILTERS, required=True)
    p_verify.add_argument("--mode", choices=MODES, default="exhaustive")
    p_verify.add_argument("--samples", type=int, help="sample count (sampled mode)")
    p_verify.add_argument("--seed", type=int, help="sampling seed (sampled mode)")
    p_verify.add_argument(
        "--jobs", type=int, default=os.cpu_count() or 1, help="worker processes"
    )
    p_verify.add_argument(
        "--no-orbits",
        action="store_true",
        help="check every sequence instead of one per orbit",
    )
    p_verify.add_argument("--report", help="write per-n records as JSON lines")
    p_verify.add_argument("--summary", help="write per-n summary as CSV")
    p_verify.set_defaults(func=_cmd_verify)

    p_scan = sub.add_parser("scan", help="counterexample scan over gcd(n,6) != 1")
    p_scan.add_argument("--from", dest="n_from", type=int, required=True)
    p_scan.add_argument("--to", dest="n_to", type=int, required=True)
    p_scan.add_argument(
        "--first-only", action="store_true", help="at most one finding per modulus"
    )
    p_scan.set_defaults(func=_cmd_scan)
    return parser


def _cmd_index(args) -> int:
    seq = parse_sequence(args.sequence)
    result = index_oracle(seq)
    print(f"index={result.index_value} witness={result.witness_unit}")
    return 0


def _cmd_witness(args) -> int:
    seq = parse_sequence(args.sequence)
    cert, trace = certify_index_one(seq)
    print(certificate_line(seq, cert, trace))
    return 0


def _cmd_enumerate(args) -> int:
    stream = enumerate_orbit_reps(args.n) if args.orbits else enumerate_minimal4(args.n)
    for seq in stream:
        print(seq.text)
    return 0


def _cmd_verify(args) -> int:
    if args.mode == "sampled" and (args.samples is None or args.seed is None):
        raise UsageError("sampled mode needs --samples and --seed")
    report = campaign(
        args.n_from,
        args.n_to,
        mode=args.mode,
        filter=args.filter,
        samples=args.samples,
        seed=args.seed,
        jobs=args.jobs,
        orbit_dedup=False if args.no_orbits else None,
    )
    for n in sorted(report.records):
        rec = report.records[n]
        orbits = "-" if rec.orbits_checked is None else rec.orbits_checked
        print(
            f"n={rec.n} checked={rec.sequences_checked} orbits={orbits} "
            f"violations={len(rec.violations)} fallbacks={rec.fallback_uses} "
            f"max_index={rec.max_index_seen} elapsed={rec.elapsed:.2f}s"
        )
        for violation in rec.violations:
            print(f"  violation {violation.sequence} index={violation.index}")
    if args.report:
        write_report_jsonl(report, args.report)
    if args.summary:
        write_summary_csv(report, args.summary)
    print(f"verdict: {report.verdict}")
    return 0 if report.passed else 2


def _cmd_scan(args) -> int:
    for n, text, index in counterexample_scan(
        args.n_from, args.n_to, first_only=args.first_only
    ):
        print(f"{text} index={index}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except HypothesesNotMetError as exc:
        print(f"hypotheses not met: {exc}", file=sys.stderr)
        return 1
    except (ZsIndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
