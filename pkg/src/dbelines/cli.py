"""Command-line surface.

Subcommands: analyze, enumerate, claims, witnesses, min-lines,
random-metrics.  Human-readable text goes to stdout by default, JSON with
--json; progress and timing go to stderr.  Exit codes: 0 success, 1 usage
or input error, 2 when a verification reported a violation or a property
failure (so CI can gate on it).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import reports
from .lines import all_lines, dbe_verdict
from .spaces import (NotOneTwoError, as_one_two, parse_distance_matrix,
                     validate_metric)
from .structure import (check_class_size_bound, check_distinct_lines,
                        check_full_cover_classes, check_twin_free_shapes,
                        check_twin_line_laws, classify_class, equiv_classes,
                        twin_pairs)
from .verify import (claims_sweep, min_lines_table, six_point_witnesses,
                     verify_small_spaces, verify_theorem)

PROGRESS_STEP = 1 << 20


class _CliParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _progress_printer(label: str):
    state = {"next": PROGRESS_STEP}

    def cb(done: int, total: int) -> None:
        if done >= state["next"] or done == total:
            state["next"] = done + PROGRESS_STEP
            print(f"{label}: {done}/{total} codes", file=sys.stderr)

    return cb


def _emit(report: dict, as_json: bool, text_lines: list[str]) -> None:
    if as_json:
        sys.stdout.write(reports.serialize_report(report))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")
    sys.stdout.flush()


def _law_text_lines(laws: dict, skipped=()) -> list[str]:
    out = ["law                        instances  violations"]
    for law, stat in laws.items():
        out.append(f"{law:<26} {stat.instances:>9}  {stat.violations:>10}")
    for law in skipped:
        out.append(f"{law:<26} {'skipped':>9}")
    return out


def _cmd_analyze(args) -> tuple[dict, int, list[str]]:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(1)
    space = validate_metric(parse_distance_matrix(text))
    try:
        ots = as_one_two(space)
    except NotOneTwoError:
        ots = None
    target = ots if ots is not None else space
    family = all_lines(target)
    verdict = dbe_verdict(target)

    results: dict = {
        "n": space.n,
        "is_one_two": ots is not None,
        "matrix": reports.matrix_to_json(space.matrix),
        "verdict": reports.verdict_to_json(verdict),
        "family": reports.family_to_json(family),
    }
    text_lines = [
        f"points: {space.n}   1-2 space: {'yes' if ots is not None else 'no'}",
        f"distinct lines: {verdict.line_count}   "
        f"universal line: {'yes' if verdict.has_universal else 'no'}",
        f"De Bruijn-Erdos property: {'holds' if verdict.holds else 'FAILS'}",
    ]
    failures = 0 if verdict.holds else 1
    if not verdict.holds:
        text_lines.append("counterexample event: fewer than n lines and no "
                          "universal line; please re-check and report")

    if ots is not None:
        tp = twin_pairs(ots)
        classes = equiv_classes(family, ots)
        violations = (check_distinct_lines(ots) + check_twin_line_laws(ots)
                      + check_full_cover_classes(ots))
        shape = check_twin_free_shapes(ots)
        size = check_class_size_bound(ots)
        violations += list(shape.violations) + list(size.violations)
        failures += len(violations)
        results.update({
            "twin_pairs": [list(p) for p in tp],
            "classes": [{
                "edges": [[e.u, e.v, e.label] for e in cls.edges],
                "line": reports.point_set(cls.line),
                "shape": classify_class(ots, cls).value,
            } for cls in classes],
            "shape_check": reports.shape_result_to_json(shape),
            "size_check": reports.shape_result_to_json(size),
            "violations": [reports.violation_to_json(v) for v in violations],
        })
        text_lines.append(f"twin pairs: {[tuple(p) for p in tp] or 'none'}")
        text_lines.append(f"edge classes: {len(classes)}")
        text_lines.append(f"law violations: {len(violations)}"
                          + ("" if not violations else "  <-- unexpected"))
    else:
        text_lines.append("general metric space: structural 1-2 law checks "
                          "not applicable")
    for i, line_mask_points in enumerate(results["family"]["lines"]):
        text_lines.append(f"  line {i}: {line_mask_points}")
    inputs = {"file": str(path)}
    return reports.build_report("analyze", inputs, results), failures, text_lines


def _cmd_enumerate(args) -> tuple[dict, int, list[str]]:
    if args.n == 8 and args.mode == "all" and not args.allow_large:
        print("enumerate --n 8 --mode all sweeps 2^28 codes; "
              "pass --allow-large to confirm", file=sys.stderr)
        raise SystemExit(1)
    progress = _progress_printer(f"enumerate n={args.n}")
    rep = verify_theorem(args.n, mode=args.mode, jobs=args.jobs,
                         max_witnesses=args.max_witnesses, progress=progress)
    results = reports.theorem_report_to_json(rep)
    inputs = {"n": args.n, "mode": args.mode, "max_witnesses": args.max_witnesses}
    text_lines = [
        f"n={rep.n} mode={rep.mode} codes={rep.total_codes}",
        f"dbe_failures: {rep.dbe_failures}",
        f"min lines overall: {rep.min_lines_overall} (code {rep.argmin_overall})",
        f"min lines without universal: {rep.min_lines_no_universal}"
        + (f" (code {rep.argmin_no_universal})"
           if rep.argmin_no_universal is not None else ""),
    ]
    if rep.class_counts_by_shape is not None:
        text_lines.append(f"class shapes: {rep.class_counts_by_shape}")
    if rep.laws is not None:
        text_lines += _law_text_lines(rep.laws)
    failures = rep.dbe_failures + rep.total_law_violations
    return reports.build_report("enumerate", inputs, results), failures, text_lines


def _cmd_claims(args) -> tuple[dict, int, list[str]]:
    if args.n == 8 and args.trials is None and not args.allow_large:
        print("claims --n 8 without --trials sweeps 2^28 codes; "
              "pass --allow-large to confirm", file=sys.stderr)
        raise SystemExit(1)
    progress = _progress_printer(f"claims n={args.n}")
    rep = claims_sweep(args.n, trials=args.trials, seed=args.seed,
                       jobs=args.jobs, max_witnesses=args.max_witnesses,
                       progress=progress)
    results = reports.claims_report_to_json(rep)
    inputs = {"n": args.n,
              "trials": args.trials,
              "seed": args.seed if args.trials is not None else None,
              "max_witnesses": args.max_witnesses}
    mode = ("exhaustive" if rep.sampling is None
            else f"sample of {rep.sampling[0]} codes, seed {rep.sampling[1]}")
    text_lines = [f"n={rep.n} ({mode}): {rep.total_codes} codes, "
                  f"{rep.twin_free_codes} twin-free"]
    text_lines += _law_text_lines(rep.laws, rep.skipped_laws)
    return (reports.build_report("claims", inputs, results),
            rep.total_violations, text_lines)


def _cmd_witnesses(args) -> tuple[dict, int, list[str]]:
    wits = six_point_witnesses()
    results = reports.witnesses_to_json(wits)
    text_lines = ["six decisive 6-point spaces (z distances vary):"]
    for item in results["witnesses"]:
        text_lines.append(
            f"  case d(u,z)=d(x,z)={item['d_uz_xz']} "
            f"d(v,z)=d(w,z)={item['d_vz_wz']} d(y,z)={item['d_yz']}: "
            f"{item['line_count']} lines (code {item['code']})")
    failures = sum(1 for w in wits if w.line_count < 6)
    text_lines.append(f"minimum line count: {results['min_line_count']} "
                      f"(must be >= 6)")
    return reports.build_report("witnesses", {}, results), failures, text_lines


def _cmd_min_lines(args) -> tuple[dict, int, list[str]]:
    if args.n == 8 and not args.allow_large:
        print("min-lines --n 8 sweeps 2^28 codes; pass --allow-large "
              "to confirm", file=sys.stderr)
        raise SystemExit(1)
    progress = _progress_printer("min-lines")
    rows = min_lines_table(2, args.n, jobs=args.jobs, progress=progress)
    results = reports.min_lines_to_json(rows)
    text_lines = ["n   min_lines  argmin_code  min_no_universal  argmin_code"]
    failures = 0
    for r in rows:
        nu = "-" if r.min_lines_no_universal is None else r.min_lines_no_universal
        nu_code = "-" if r.argmin_no_universal is None else r.argmin_no_universal
        text_lines.append(f"{r.n:<3} {r.min_lines_overall:>9}  "
                          f"{r.argmin_overall:>11}  {nu:>16}  {nu_code:>11}")
        if r.min_lines_no_universal is not None and r.min_lines_no_universal < r.n:
            failures += 1
    inputs = {"n_lo": 2, "n_hi": args.n}
    return reports.build_report("min-lines", inputs, results), failures, text_lines


def _cmd_random_metrics(args) -> tuple[dict, int, list[str]]:
    progress = _progress_printer("random-metrics")
    rep = verify_small_spaces(trials=args.trials, seed=args.seed,
                              max_examples=args.max_witnesses,
                              progress=progress)
    results = reports.small_spaces_to_json(rep)
    text_lines = []
    for n, total, fails in rep.exhaustive:
        text_lines.append(f"exhaustive 1-2 codes n={n}: {total} codes, "
                          f"{fails} property failures")
    for n, trials, fails in rep.random:
        text_lines.append(f"random rational metrics n={n}: {trials} trials, "
                          f"{fails} property failures")
    text_lines.append("result: no counterexample found" if rep.total_failures == 0
                      else "COUNTEREXAMPLE CANDIDATES FOUND - see report")
    inputs = {"trials": args.trials, "seed": args.seed,
              "max_witnesses": args.max_witnesses}
    return (reports.build_report("random-metrics", inputs, results),
            rep.total_failures, text_lines)


def _build_parser() -> _CliParser:
    parser = _CliParser(prog="dbelines",
                        description="Lines in finite metric spaces: analysis "
                                    "and exhaustive 1-2 space verification.")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def common(p, n_default=None, n_required=False):
        p.add_argument("--json", action="store_true",
                       help="emit a JSON report on stdout")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes (never changes the output)")
        if n_default is not None or n_required:
            p.add_argument("--n", type=int, required=n_required,
                           default=n_default, help="point count")

    p = sub.add_parser("analyze", help="analyze one metric space from a file")
    p.add_argument("file", help="distance matrix file")
    common(p)

    p = sub.add_parser("enumerate",
                       help="sweep all 1-2 spaces on n points and verify the "
                            "De Bruijn-Erdos property plus structural laws")
    common(p, n_required=True)
    p.add_argument("--mode", choices=("all", "iso"), default="all",
                   help="visit all codes or one per isomorphism class")
    p.add_argument("--max-witnesses", type=int, default=100,
                   help="cap on stored failure codes")
    p.add_argument("--allow-large", action="store_true",
                   help="confirm the 2^28-code n=8 sweep")

    p = sub.add_parser("claims",
                       help="per-law traceability over all codes or a sample")
    common(p, n_required=True)
    p.add_argument("--trials", type=int, default=None,
                   help="sample this many random codes instead of sweeping")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--max-witnesses", type=int, default=100)
    p.add_argument("--allow-large", action="store_true")

    p = sub.add_parser("witnesses",
                       help="construct the six decisive 6-point spaces and "
                            "count their lines")
    common(p)

    p = sub.add_parser("min-lines",
                       help="exact minimum line counts for 2..n points")
    common(p, n_default=7)
    p.add_argument("--allow-large", action="store_true")

    p = sub.add_parser("random-metrics",
                       help="exhaustive small 1-2 codes plus seeded random "
                            "rational metrics at n = 2..4")
    common(p)
    p.add_argument("--trials", type=int, default=100_000,
                   help="random matrices per point count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-witnesses", type=int, default=100)

    return parser


_COMMANDS = {
    "analyze": _cmd_analyze,
    "enumerate": _cmd_enumerate,
    "claims": _cmd_claims,
    "witnesses": _cmd_witnesses,
    "min-lines": _cmd_min_lines,
    "random-metrics": _cmd_random_metrics,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return 1
    if getattr(args, "n", None) is not None and not 2 <= args.n <= 8:
        print("point count must be between 2 and 8", file=sys.stderr)
        return 1
    start = time.monotonic()
    try:
        report, failures, text_lines = _COMMANDS[args.subcommand](args)
    except ValueError as exc:
        # covers matrix format, metric axiom, 1-2 range and argument errors
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    _emit(report, args.json, text_lines)
    print(f"runtime: {elapsed_ms} ms", file=sys.stderr)
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
