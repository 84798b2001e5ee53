"""Command-line interface.

Subcommands: solve (play one game), exhaustive and montecarlo (ratio
studies), extremal (bound-attaining profiles), bounds (closed forms only).
Exit codes: 0 success, 2 parse errors, 3 model-shape errors, 4 infeasible
constructions, 5 budget refusals.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import EliminationSequence, format_profile, parse_profile
from .cultures import CultureSpec, resolve_budget
from .errors import (
    BudgetExceeded,
    CandidateUnknown,
    ElimGameError,
    InvalidVoter,
    LengthMismatch,
    OutOfDomain,
    ParseError,
    PhiOutOfRange,
    SequenceLengthMismatch,
    TreeTooLarge,
    Unsatisfiable,
    ZeroWelfare,
)
from .experiments import (
    CSV_HEADER,
    ExperimentConfig,
    csv_row,
    json_summary,
    run_experiment,
    write_histogram_csv,
)
from .extremal import ExtremalMode, generate, verify_tight
from .play import (
    BehaviorAssignment,
    backward_induction,
    mixed_play,
    sincere_play,
    spne_outcome,
    trace_report,
)
from .sweep import RatioMode
from .welfare import poa_for_sequence, ratio_json, sr_bound_for_sequence

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SHAPE = 3
EXIT_INFEASIBLE = 4
EXIT_BUDGET = 5

_SHAPE_ERRORS = (
    CandidateUnknown,
    SequenceLengthMismatch,
    InvalidVoter,
    TreeTooLarge,
    ZeroWelfare,
    OutOfDomain,
    PhiOutOfRange,
    LengthMismatch,
)


def _add_sequence_arg(p):
    p.add_argument("--sequence", required=True,
                   help="comma-separated 1-based voter turns, e.g. 1,2,3,1")


def _add_study_args(p):
    p.add_argument("--n", type=int, required=True, help="number of voters")
    p.add_argument("--m", type=int, required=True, help="number of candidates")
    _add_sequence_arg(p)
    p.add_argument("--mode", choices=["ab", "cb"], default="ab",
                   help="ratio: ab = anarchy, cb = sincerity")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--bins", type=int, default=60, help="histogram bins")
    p.add_argument("--out", help="write histogram CSV to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elimgame",
        description="sequential elimination voting games: outcomes, "
                    "welfare ratios, worst cases",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="play one game and print its trace")
    p.add_argument("--profile", required=True, help="profile file path, - for stdin")
    _add_sequence_arg(p)
    p.add_argument("--behavior", choices=["sincere", "strategic", "oracle", "mixed"],
                   default="sincere")
    p.add_argument("--sincere-set", default="",
                   help="mixed only: comma-separated 1-based sincere voters")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exhaustive", help="ratio stats over every profile")
    _add_study_args(p)
    p.add_argument("--fix-first", action=argparse.BooleanOptionalAction, default=True,
                   help="pin voter 1 to the identity ranking (sound by relabelling)")
    p.add_argument("--force", action="store_true",
                   help="ignore the enumeration budget")
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("montecarlo", help="ratio stats over sampled profiles")
    _add_study_args(p)
    p.add_argument("--culture", default="ic", help="ic or mallows:phi=X")
    p.add_argument("--phi", type=float, help="Mallows dispersion in (0,1]")
    p.add_argument("--reference", choices=["identity", "random"], default="identity",
                   help="Mallows reference ranking policy")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("extremal", help="construct a bound-attaining profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_sequence_arg(p)
    p.add_argument("--mode", choices=["poa", "sr"], default="poa")
    p.add_argument("--oracle", action="store_true",
                   help="re-verify the strategic winner by backward induction")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("bounds", help="print the closed-form bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_sequence_arg(p)
    p.set_defaults(func=cmd_bounds)

    return parser


def _read_profile(path: str):
    if path == "-":
        return parse_profile(sys.stdin.read())
    with open(path) as fh:
        return parse_profile(fh.read())


def _parse_voter_set(text: str, n: int) -> BehaviorAssignment:
    if not text.strip():
        return BehaviorAssignment(frozenset())
    voters = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit() or int(part) < 1:
            raise ParseError(f"bad voter index {part!r} in sincere set")
        if int(part) > n:
            raise InvalidVoter(f"voter {part} outside 1..{n}")
        voters.append(int(part) - 1)
    return BehaviorAssignment(frozenset(voters))


def cmd_solve(args) -> int:
    profile = _read_profile(args.profile)
    seq = EliminationSequence.parse(args.sequence)
    if args.behavior == "sincere":
        trace = sincere_play(profile, seq)
    elif args.behavior == "strategic":
        trace = spne_outcome(profile, seq)
    elif args.behavior == "oracle":
        trace = backward_induction(profile, seq)
    else:
        behavior = _parse_voter_set(args.sincere_set, profile.n)
        trace = mixed_play(profile, seq, behavior)
    print(json.dumps(trace_report(trace, profile), indent=2))
    return EXIT_OK


def _emit_study(args, config) -> int:
    result = run_experiment(config)
    print(CSV_HEADER)
    print(csv_row(result))
    print(json.dumps(json_summary(result), sort_keys=True))
    if args.out:
        write_histogram_csv(args.out, result)
    return EXIT_OK


def cmd_exhaustive(args) -> int:
    config = ExperimentConfig(
        n=args.n, m=args.m,
        sequence=EliminationSequence.parse(args.sequence),
        mode=RatioMode.parse(args.mode),
        workers=args.workers, histogram_bins=args.bins,
        fix_first=args.fix_first,
        budget=(1 << 62) if args.force else resolve_budget(None),
    )
    return _emit_study(args, config)


def cmd_montecarlo(args) -> int:
    culture = CultureSpec.parse(args.culture, phi=args.phi)
    if args.reference == "random":
        if culture.kind.value != "mallows":
            raise OutOfDomain("--reference only applies to Mallows cultures")
        culture = CultureSpec.mallows(culture.phi, random_reference=True)
    config = ExperimentConfig(
        n=args.n, m=args.m,
        sequence=EliminationSequence.parse(args.sequence),
        mode=RatioMode.parse(args.mode),
        culture=culture, samples=args.samples, seed=args.seed,
        workers=args.workers, histogram_bins=args.bins,
    )
    return _emit_study(args, config)


def cmd_extremal(args) -> int:
    seq = EliminationSequence.parse(args.sequence)
    mode = ExtremalMode.parse(args.mode)
    profile, spec = generate(mode, seq, args.n, args.m)
    report = verify_tight(profile, seq, mode, oracle=args.oracle)
    payload = {
        "mode": mode.value,
        "n": args.n,
        "m": args.m,
        "sequence": seq.to_text(),
        "achieved": ratio_json(report.achieved),
        "bound": ratio_json(report.bound),
        "attained": report.attained,
        "x": spec.x + 1,
        "profile": format_profile(profile).splitlines(),
    }
    if report.oracle_agrees is not None:
        payload["oracle_agrees"] = report.oracle_agrees
    sys.stdout.write(format_profile(profile))
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def cmd_bounds(args) -> int:
    seq = EliminationSequence.parse(args.sequence)
    seq.validate(args.n, args.m)
    occ = seq.occurrences(args.n)
    payload = {
        "sequence": seq.to_text(),
        "n": args.n,
        "m": args.m,
        "o_max": occ.o_max,
        "occurrences": list(occ.counts),
        "poa": ratio_json(poa_for_sequence(seq, args.n, args.m)),
        "sr_upper_bound": ratio_json(sr_bound_for_sequence(seq, args.n, args.m)),
        "palindromic": seq.is_palindromic(),
    }
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Unsatisfiable as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _SHAPE_ERRORS as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except ElimGameError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main(argv=None))
