"""Command-line interface.

Exit codes: 0 success (or axiom satisfied), 1 axiom violated / test
failures, 2 profile parse or I/O error, 3 rule-profile incompatibility,
4 weak-order size guard, 5 rank extraction hit a non-monotone rule.
Set ``SCRVOTE_ALLOW_LARGE=1`` to override the weak-mode size guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .axioms import (
    AxiomReport,
    check_candidate_monotone,
    check_committee_monotone,
    check_ilvb,
    check_ipsc,
    check_psc,
    check_rank_jr,
    check_weak_psc,
    rank_jr_incompatibility_witness,
)
from .core import Ranking
from .errors import (
    ModeError,
    NonMonotoneRuleError,
    ProfileError,
    ProfileParseError,
    ScrvoteError,
    SizeGuardError,
    StallError,
)
from .generate import seeded_profiles
from .profile_io import (
    ProfileDocument,
    default_names,
    format_profile,
    load_profile,
)
from .rules import RuleId, make_rule
from .scr import scr
from .swf import chain_to_ranking, droop_bound, hare_bound, ranking_psc, worst_case_curve

_CANDIDATE_LIST_FIELDS = ("support", "periphery", "expected", "got", "domain")
_CANDIDATE_FIELDS = ("candidate", "dropped")


def _allow_large() -> bool:
    return bool(os.environ.get("SCRVOTE_ALLOW_LARGE"))


def _emit(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


def _named_witness(witness: dict | None, names) -> dict | None:
    if witness is None:
        return None
    out = dict(witness)
    for key in _CANDIDATE_LIST_FIELDS:
        if key in out:
            out[key] = [names[c] for c in out[key]]
    for key in _CANDIDATE_FIELDS:
        if key in out:
            out[key] = names[out[key]]
    return out


def _report_payload(report: AxiomReport, names) -> dict:
    payload = report.to_json()
    payload["witness"] = _named_witness(payload["witness"], names)
    return payload


def _parse_scoring(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    return tuple(int(part) for part in text.split(","))


def _rule_id(args) -> RuleId:
    return RuleId(
        args.rule,
        scoring=_parse_scoring(getattr(args, "scoring", None)),
        tiebreak=getattr(args, "tiebreak", "low"),
    )


def cmd_elect(args) -> int:
    document = load_profile(args.profile)
    if args.quota not in (None, "droop"):
        raise ModeError("the shipped committee rules are pinned to the Droop quota")
    names = document.names
    if args.rule == "scr":
        trace = scr(document.profile, args.k, allow_large=_allow_large())
        payload: dict = {"committee": [names[c] for c in trace.elected]}
        if args.trace:
            payload["trace"] = {
                "elected": [names[c] for c in trace.elected],
                "steps": [
                    {
                        "candidate": names[step.candidate],
                        "forced": step.forced,
                        "refinements": [
                            {
                                "domain": [names[c] for c in sorted(ref.domain)],
                                "voters": sorted(ref.coalition.voters),
                                "support": [names[c] for c in sorted(ref.coalition.support)],
                                "rho": str(ref.rho),
                            }
                            for ref in step.refinements
                        ],
                    }
                    for step in trace.steps
                ],
            }
        _emit(payload)
        return 0
    rule = make_rule(_rule_id(args), allow_large=_allow_large())
    committee = sorted(rule(document.profile, args.k))
    _emit({"committee": [names[c] for c in committee]})
    return 0


def cmd_rank(args) -> int:
    document = load_profile(args.profile)
    rule = make_rule(_rule_id(args), allow_large=_allow_large())
    try:
        ranking = chain_to_ranking(rule, document.profile)
    except NonMonotoneRuleError as exc:
        _emit({"error": "not-committee-monotone", "k": exc.k})
        return 5
    _emit({"ranking": [document.names[c] for c in ranking.order]})
    return 0


def cmd_check(args) -> int:
    document = load_profile(args.profile)
    profile = document.profile
    names = document.names
    scheme = args.quota or "droop"
    if args.ranking:
        if args.axiom != "psc":
            raise ModeError("ranking checks support the psc axiom only")
        order = tuple(document.index_of(t) for t in args.ranking.split(","))
        report = ranking_psc(profile, Ranking(order), scheme)
    else:
        if not args.committee:
            raise ProfileParseError("provide --committee or --ranking")
        committee = document.committee(args.committee)
        k = args.k if args.k is not None else len(committee)
        if args.axiom == "psc":
            report = check_psc(profile, k, committee, scheme)
        elif args.axiom == "weak-psc":
            report = check_weak_psc(profile, k, committee, scheme)
        elif args.axiom == "ipsc":
            report = check_ipsc(profile, k, committee, allow_large=_allow_large())
        elif args.axiom == "rank-jr":
            report = check_rank_jr(profile, k, committee)
        else:
            raise ProfileError(f"unknown axiom {args.axiom!r}")
    _emit(_report_payload(report, names))
    return 0 if report.satisfied else 1


def _iter_test_profiles(args):
    if args.profiles:
        paths = sorted(Path(args.profiles).glob("*.profile"))
        if not paths:
            raise ProfileParseError(f"no .profile files under {args.profiles}")
        for path in paths:
            yield str(path), load_profile(path).profile
    else:
        seed, count = args.fuzz
        profiles = seeded_profiles(int(seed), int(count), args.kind, args.n, args.m)
        for index, profile in enumerate(profiles):
            yield f"fuzz[{seed}]#{index}", profile


def cmd_test(args) -> int:
    rule = make_rule(_rule_id(args), allow_large=_allow_large())
    instances = 0
    checks = 0
    violations = 0
    first: dict | None = None

    def record(label: str, report: AxiomReport, k: int | None):
        nonlocal checks, violations, first
        checks += 1
        if not report.satisfied:
            violations += 1
            if first is None:
                first = {"instance": label, "k": k, "report": report.to_json()}

    for label, profile in _iter_test_profiles(args):
        instances += 1
        ks = [args.k] if args.k is not None else list(range(1, profile.m + 1))
        if args.axiom == "committee-monotone":
            record(label, check_committee_monotone(rule, profile), None)
            continue
        for k in ks:
            if args.axiom == "candidate-monotone":
                report = check_candidate_monotone(rule, profile, k)
            elif args.axiom == "ilvb":
                report = check_ilvb(rule, profile, k)
            else:
                committee = rule(profile, k)
                if args.axiom == "ipsc":
                    report = check_ipsc(profile, k, committee, allow_large=_allow_large())
                elif args.axiom == "rank-jr":
                    report = check_rank_jr(profile, k, committee)
                elif args.axiom.startswith("weak-psc-"):
                    report = check_weak_psc(profile, k, committee, args.axiom.rsplit("-", 1)[1])
                elif args.axiom.startswith("psc-"):
                    report = check_psc(profile, k, committee, args.axiom.split("-", 1)[1])
                else:
                    raise ProfileError(f"unknown axiom {args.axiom!r}")
            record(label, report, k)
    _emit(
        {
            "instances": instances,
            "checks": checks,
            "violations": violations,
            "first_violation": first,
        }
    )
    return 1 if violations else 0


def cmd_curve(args) -> int:
    points = worst_case_curve(args.m, args.quota)
    bound = hare_bound if args.quota == "hare" else droop_bound
    rows = []
    for point in points:
        limit = bound(point.alpha_high, args.m, normalized=True)
        rows.append((point, limit))
    if args.json:
        _emit(
            [
                {
                    "alpha_low": str(p.alpha_low),
                    "alpha_high": str(p.alpha_high),
                    "value": str(p.value),
                    "bound": str(limit),
                }
                for p, limit in rows
            ]
        )
        return 0
    lines = ["alpha_low,alpha_high,value_num,value_den,bound_num,bound_den"]
    for p, limit in rows:
        lines.append(
            f"{p.alpha_low},{p.alpha_high},{p.value.numerator},{p.value.denominator},"
            f"{limit.numerator},{limit.denominator}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_witness(args) -> int:
    if args.construction != "rank-jr":
        raise ProfileError(f"unknown construction {args.construction!r}")
    result = rank_jr_incompatibility_witness(args.n, args.q, args.m)
    ell = result.k_large
    names = tuple(
        [f"c{i + 1}" for i in range(ell)]
        + ["d"]
        + [f"x{i + 1}" for i in range(args.m - ell - 1)]
    )
    document = ProfileDocument(result.profile, names)
    text = format_profile(document)
    if args.profile_out:
        Path(args.profile_out).write_text(text, encoding="utf-8")
    _emit(
        {
            "construction": "rank-jr",
            "bridge": names[result.bridge],
            "k_small": result.k_small,
            "k_large": result.k_large,
            "small_feasible": [sorted(names[c] for c in w) for w in result.small_feasible],
            "large_feasible": [sorted(names[c] for c in w) for w in result.large_feasible],
            "bridge_in_every_small": result.bridge_in_every_small,
            "nested_pair_exists": result.nested_pair_exists,
            "incompatible": result.incompatible,
            "profile": text,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scrvote",
        description="Proportional committee voting rules and axiom checkers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    elect = sub.add_parser("elect", help="run a committee rule on a profile file")
    elect.add_argument("--rule", required=True)
    elect.add_argument("--k", type=int, required=True)
    elect.add_argument("--quota", choices=["droop", "hare"])
    elect.add_argument("--scoring")
    elect.add_argument("--tiebreak", choices=["low", "high"], default="low")
    elect.add_argument("--trace", action="store_true")
    elect.add_argument("profile")
    elect.set_defaults(func=cmd_elect)

    rank = sub.add_parser("rank", help="extract the full output ranking of a rule")
    rank.add_argument("--rule", required=True)
    rank.add_argument("--scoring")
    rank.add_argument("--tiebreak", choices=["low", "high"], default="low")
    rank.add_argument("profile")
    rank.set_defaults(func=cmd_rank)

    check = sub.add_parser("check", help="check an axiom for a committee or ranking")
    check.add_argument("--axiom", required=True, choices=["psc", "weak-psc", "ipsc", "rank-jr"])
    check.add_argument("--quota", choices=["droop", "hare"])
    check.add_argument("--k", type=int)
    check.add_argument("--committee")
    check.add_argument("--ranking")
    check.add_argument("profile")
    check.set_defaults(func=cmd_check)

    test = sub.add_parser("test", help="run an axiom across a profile corpus")
    test.add_argument("--rule", required=True)
    test.add_argument("--axiom", required=True)
    test.add_argument("--scoring")
    test.add_argument("--tiebreak", choices=["low", "high"], default="low")
    test.add_argument("--profiles", help="directory of .profile files")
    test.add_argument("--fuzz", nargs=2, metavar=("SEED", "COUNT"))
    test.add_argument("--kind", choices=["strict", "weak", "truncated"], default="strict")
    test.add_argument("--n", type=int, default=8)
    test.add_argument("--m", type=int, default=6)
    test.add_argument("--k", type=int)
    test.set_defaults(func=cmd_test)

    curve = sub.add_parser("curve", help="worst-case swap-distance curve")
    curve.add_argument("--m", type=int, required=True)
    curve.add_argument("--quota", choices=["droop", "hare"], required=True)
    curve.add_argument("--out")
    curve.add_argument("--json", action="store_true")
    curve.set_defaults(func=cmd_curve)

    witness = sub.add_parser("witness", help="generate an incompatibility witness profile")
    witness.add_argument("--construction", required=True)
    witness.add_argument("--n", type=int, required=True)
    witness.add_argument("--q", type=int, required=True)
    witness.add_argument("--m", type=int, required=True)
    witness.add_argument("--profile-out")
    witness.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "profiles", None) and getattr(args, "fuzz", None):
        print("use either --profiles or --fuzz, not both", file=sys.stderr)
        return 2
    if args.command == "test" and not (args.profiles or args.fuzz):
        print("test needs --profiles or --fuzz", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ProfileParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ModeError, StallError, ProfileError, ScrvoteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
