"""Command-line harness: construct, check, complexity, attack, menelaus,
verify-theorem, report.

Every command is deterministic under a fixed --seed; JSON goes to stdout
(or --out) and verification commands exit nonzero when any assertion
fails.
"""

import argparse
import json
import sys
from fractions import Fraction

from .attacks import (
    bsgs_interval_attack,
    difference_cover_attack,
    low_weight_attack,
    queryset_attack,
)
from .complexity import (
    ComplexityResult,
    constructed_upper,
    exact_complexity,
    generic_bounds,
    pairing_construction,
)
from .constructions import (
    check_bk_sums,
    check_det2x2,
    check_twelve,
    check_weak_sidon,
    embed_bk_mod_p,
    greedy_weak_sidon,
    hamming_weight_set,
    random_subset,
    sample_snk,
    small_squares_set,
)
from .errors import CdlpError
from .generic_group import TranscriptRecorder, new_instance
from .lines import ConstrainedSet, PointSet, QuerySet
from .menelaus import (
    Grid7,
    complete_configuration,
    grid_points,
    sample_grid,
    twelve_det,
)
from .report import generate_report
from .verify import SUITE_DEFAULTS, VERSION, run_suite


def _defaults_table() -> str:
    lines = [f"desk-scale verification defaults (v{VERSION}):"]
    for suite, params in sorted(SUITE_DEFAULTS.items()):
        rendered = ", ".join(f"{k}={v}" for k, v in params.items())
        lines.append(f"  {suite:<12} {rendered}")
    return "\n".join(lines)


def _emit(record, args) -> None:
    text = json.dumps(record, indent=2, sort_keys=True, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_alpha(text) -> Fraction:
    return Fraction(text)


def _parse_points(text):
    return tuple(int(v) for v in text.split(",") if v != "")


def _parse_lines(text):
    out = []
    for chunk in text.split(","):
        a, b = chunk.split(":")
        out.append((int(a), int(b)))
    return tuple(out)


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "random":
        S = random_subset(args.p, args.size, seed=args.seed)
    elif kind == "snk":
        key = tuple(int(v) for v in args.key.split(",")) if args.key else None
        S = sample_snk(args.p, args.n, args.k, key=key, seed=args.seed)
    elif kind == "bose-chowla":
        S = embed_bk_mod_p(args.p, args.k)
    elif kind == "squares":
        S = small_squares_set(args.p)
    elif kind == "hamming":
        S = hamming_weight_set(args.bits, args.t, args.p)
    elif kind == "greedy-sidon":
        S = greedy_weak_sidon(args.p, args.target)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(kind)
    _emit(S.to_json(), args)
    return 0


def cmd_check(args) -> int:
    S = ConstrainedSet.load(args.set)
    if args.certificate == "weak-sidon":
        report = check_weak_sidon(S)
    elif args.certificate == "bk":
        report = check_bk_sums(S, args.k)
    elif args.certificate == "det2x2":
        report = check_det2x2(S, mode=args.mode, trials=args.trials, seed=args.seed)
    else:
        report = check_twelve(S, mode=args.mode, trials=args.trials, seed=args.seed)
    _emit(report.to_json(), args)
    return 0 if report.verified else 1


def cmd_complexity(args) -> int:
    S = ConstrainedSet.load(args.set)
    alpha = _parse_alpha(args.alpha)
    if args.mode == "exact":
        result = exact_complexity(S, alpha, args.kind)
        _emit(result.to_json(), args)
    elif args.mode == "construct":
        result = constructed_upper(S, alpha)
        _emit(result.to_json(), args)
    else:
        lower, upper = generic_bounds(S, alpha)
        _emit(
            {
                "kind": args.kind,
                "alpha": str(alpha),
                "lower": f"{lower:.12g}",
                "upper": f"{upper:.12g}",
            },
            args,
        )
    return 0


def cmd_attack(args) -> int:
    inst = new_instance(args.p, secret=args.secret, seed=args.seed)
    recorder = TranscriptRecorder(inst)
    if args.method == "bsgs":
        hi = args.hi if args.hi is not None else args.p
        outcome = bsgs_interval_attack(recorder, args.lo, hi)
    elif args.method == "diff-cover":
        S = ConstrainedSet.load(args.set)
        X = PointSet(args.p, _parse_points(args.x_points))
        Y = PointSet(args.p, _parse_points(args.y_points))
        outcome = difference_cover_attack(recorder, X, Y, S)
    elif args.method == "queryset":
        S = ConstrainedSet.load(args.set)
        if args.lines:
            L = QuerySet(args.p, _parse_lines(args.lines))
        else:
            L = pairing_construction(S, _parse_alpha(args.alpha))
        outcome = queryset_attack(recorder, L, S, seed=args.seed)
    else:
        outcome = low_weight_attack(recorder, args.bits, args.t, seed=args.seed)
    record = outcome.to_json()
    record["transcript"] = recorder.transcript.to_json()
    _emit(record, args)
    return 0 if outcome.success else 1


def cmd_menelaus(args) -> int:
    if args.action == "sample":
        g = sample_grid(args.p, seed=args.seed, allow_vertical=args.allow_vertical)
        pts = grid_points(g)
        _emit({"grid": g.to_json(), "points": pts.to_json(), "det": twelve_det(pts)}, args)
        return 0
    if args.action == "complete":
        values = _parse_points(args.values)
        z4, witness = complete_configuration(args.p, values, seed=args.seed)
        _emit({"z4": z4, "witness": witness.to_json()}, args)
        return 0
    # verify: sample grids and insist the determinant vanishes on each
    failures = 0
    for i in range(args.trials):
        g = sample_grid(args.p, seed=(args.seed, i), allow_vertical=True)
        if twelve_det(grid_points(g)) != 0:
            failures += 1
    _emit({"p": args.p, "trials": args.trials, "failures": failures}, args)
    return 0 if failures == 0 else 1


_SUITE_OPTION_MAP = {
    "shoup": {"p": "p", "trials": "trials", "m": "ms"},
    "tight": {"p": "p", "n_sets": "n_sets", "size": "size"},
    "prop6": {"p": "p", "size": "size"},
    "random-sets": {"n_sets": "n_sets"},
    "bsgs1": {"p": "p", "n_sets": "n_random"},
    "bsgs": {"p": "p", "n_sets": "n_sets"},
    "cbound": {"p": "p", "n_sets": "n_sets", "trials": "trials"},
    "zarankiewicz": {"trials": "n_random"},
    "menelaus": {"trials": "n_grids"},
}


def cmd_verify_theorem(args) -> int:
    overrides = {}
    mapping = _SUITE_OPTION_MAP[args.id]
    for option, target in mapping.items():
        value = getattr(args, option.replace("-", "_"), None)
        if value is None:
            continue
        overrides[target] = (value,) if target == "ms" else value
    report = run_suite(args.id, seed=args.seed, **overrides)
    _emit(report.to_json(), args)
    if not args.json:
        for item in report.items:
            status = "pass" if item["passed"] else "FAIL"
            print(f"[{status}] {item['name']}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    plot = False if args.no_plot else args.plot
    _, written = generate_report(
        args.out or "bounds.csv", p=args.p, alpha=_parse_alpha(args.alpha),
        seed=args.seed, plot_path=plot,
    )
    print("\n".join(written))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdlplab",
        description="Exact-arithmetic lab for the constrained discrete logarithm problem",
        epilog=_defaults_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"cdlplab {VERSION}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--json", action="store_true", help="machine-readable output only")
    common.add_argument("--out", help="write the JSON/CSV output to this path")

    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a constrained set")
    c.add_argument("--kind", required=True,
                   choices=["random", "snk", "bose-chowla", "squares", "hamming", "greedy-sidon"])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--size", type=int, default=8)
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--key", help="comma-separated polynomial coefficients a0,a1,...")
    c.add_argument("--bits", type=int, default=4)
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--target", type=int, default=4)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", parents=[common], help="run a certificate checker")
    c.add_argument("--set", required=True, help="ConstrainedSet JSON file")
    c.add_argument("--certificate", required=True,
                   choices=["weak-sidon", "bk", "det2x2", "twelve"])
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--mode", choices=["exhaustive", "randomized"], default="exhaustive")
    c.add_argument("--trials", type=int, default=10000)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("complexity", parents=[common], help="compute or bound a complexity")
    c.add_argument("--set", required=True)
    c.add_argument("--kind", choices=["generic", "bsgs", "bsgs1"], default="generic")
    c.add_argument("--alpha", default="1")
    c.add_argument("--mode", choices=["exact", "bounds", "construct"], default="exact")
    c.set_defaults(func=cmd_complexity)

    c = sub.add_parser("attack", parents=[common], help="run an attack against the oracle")
    c.add_argument("--method", required=True,
                   choices=["bsgs", "diff-cover", "queryset", "low-weight"])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--secret", type=int, help="plant this secret (else drawn from --seed)")
    c.add_argument("--lo", type=int, default=0)
    c.add_argument("--hi", type=int)
    c.add_argument("--set", help="ConstrainedSet JSON file (diff-cover, queryset)")
    c.add_argument("--x-points", dest="x_points", help="comma-separated giant steps")
    c.add_argument("--y-points", dest="y_points", help="comma-separated baby steps")
    c.add_argument("--lines", help="explicit query lines a:b,a:b,...")
    c.add_argument("--alpha", default="1")
    c.add_argument("--bits", type=int, default=8)
    c.add_argument("--t", type=int, default=2)
    c.set_defaults(func=cmd_attack)

    c = sub.add_parser("menelaus", parents=[common], help="grid geometry commands")
    c.add_argument("action", choices=["verify", "complete", "sample"])
    c.add_argument("--p", type=int, default=1009)
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--values", help="eleven abscissas x1..x4,y1..y4,z1..z3")
    c.add_argument("--allow-vertical", action="store_true")
    c.set_defaults(func=cmd_menelaus)

    c = sub.add_parser("verify-theorem", parents=[common], help="run a theorem suite")
    c.add_argument("--id", required=True, choices=sorted(SUITE_DEFAULTS))
    c.add_argument("--p", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--trials", type=int)
    c.add_argument("--size", type=int)
    c.add_argument("--n-sets", dest="n_sets", type=int)
    c.set_defaults(func=cmd_verify_theorem)

    c = sub.add_parser("report", parents=[common], help="bounds table CSV plus figure")
    c.add_argument("--p", type=int, default=101)
    c.add_argument("--alpha", default="1")
    c.add_argument("--plot", help="figure path (defaults next to the CSV)")
    c.add_argument("--no-plot", action="store_true", help="skip the figure")
    c.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CdlpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
