"""Command-line front end.

Exit codes: 0 success, 1 computation failure, 2 verification failure,
3 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import kernels
from .brfunction import EvaluatorMismatch, LambdaTable, family_sum, in_region, lambda_br
from .corpus import builtin_corpus
from .familyfile import FamilyParseError, load_family
from .monomial import NotPrimaryError, colength_box, colength_incl_excl
from .multiplicity import (
    DEFAULT_BUDGET,
    StabilizationError,
    br_extraction,
    br_multiplicity_sequence,
    hs_extraction,
    mixed_multiplicities,
)
from .theorems import CHECKS, RunConfig, VerificationFailure, _stringify, run_corpus

EXIT_OK, EXIT_COMPUTE, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("brmult")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(_stringify(payload), indent=2, sort_keys=True))
    else:
        print(human)


def _family(args):
    ff = load_family(args.file, allow_non_primary=args.allow_non_primary)
    return ff.family


def _name(F, j):
    return F.names[j] if F.names else f"I{j + 1}"


# ---------------------------------------------------------------- commands


def cmd_colength(args):
    F = _family(args)
    rows, lines = [], []
    for j, I in enumerate(F.ideals):
        box = colength_box(I)
        ie = colength_incl_excl(I) if len(I.gens) <= 20 else None
        if ie is not None and ie != box:
            raise EvaluatorMismatch(f"colength algorithms disagree on {I}: box {box}, inclusion-exclusion {ie}")
        rows.append({"ideal": _name(F, j), "generators": str(I), "colength": box, "incl_excl": ie})
        lines.append(f"{_name(F, j):>6}  {box:>8}  {I}")
    _emit(args, {"colengths": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_multiplicity(args):
    F = _family(args)
    rows, lines = [], []
    targets = [(_name(F, j), I) for j, I in enumerate(F.ideals)]
    if F.count > 1:
        targets.append(("sum", family_sum(F)))
    for name, I in targets:
        ex = hs_extraction(I, args.budget)
        rows.append({"ideal": name, "generators": str(I), "e": ex.value, "bases": ex.bases})
        lines.append(f"e({name}) = {ex.value}    bases {ex.bases[0][0]},{ex.bases[1][0]}    {I}")
    ex = br_extraction(F, args.budget)
    lines.append(f"e(C) = {ex.value}    bases {ex.bases[0][0]},{ex.bases[1][0]}")
    _emit(args, {"hilbert_samuel": rows, "buchsbaum_rim": {"e": ex.value, "bases": ex.bases}}, "\n".join(lines))
    return EXIT_OK


def cmd_mixed(args):
    F = _family(args)
    table = mixed_multiplicities(F, args.budget)
    entries = sorted(table.entries.items())
    lines = [f"e_{''.join(map(str, i)) if F.dim < 10 else i} = {v}" for i, v in entries]
    lines.append(f"sum = {table.total()}")
    payload = {"mixed": [{"type": list(i), "e": v} for i, v in entries], "sum": table.total()}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_br_function(args):
    F = _family(args)
    r = F.count
    lam = LambdaTable(F)
    grid = {}
    status = EXIT_OK
    for p in range(args.p_max + 1):
        for q in range(args.q_max + 1):
            if args.mode == "brute":
                grid[p, q] = lam.get(p, q, "brute")
            elif not in_region(p, q, r):
                # stratified evaluation is undefined here
                grid[p, q] = lam.get(p, q, "brute") if args.mode != "fast" else None
            elif args.mode == "both":
                a, b = lam.get(p, q, "brute"), lam.get(p, q, "fast")
                if a != b:
                    log.error("evaluators disagree at (%d, %d): brute %d, fast %d", p, q, a, b)
                    status = EXIT_VERIFY
                grid[p, q] = a
            else:
                grid[p, q] = lam.get(p, q, "fast")
    lam_one = [lambda_br(F, p) for p in range(args.p_max + 1)]
    width = max(len(str(v)) for v in list(grid.values()) + lam_one if v is not None) + 1
    width = max(width, 4)
    head = "p\\q".rjust(4) + "".join(str(q).rjust(width) for q in range(args.q_max + 1)) + " | lambda"
    lines = [f"Lambda(p, q), mode {args.mode}; '.' = outside q >= (p+1)r", head]
    for p in range(args.p_max + 1):
        cells = "".join(("." if grid[p, q] is None else str(grid[p, q])).rjust(width) for q in range(args.q_max + 1))
        lines.append(str(p).rjust(4) + cells + f" | {lam_one[p]}")
    payload = {
        "mode": args.mode,
        "lambda": lam_one,
        "Lambda": [[grid[p, q] for q in range(args.q_max + 1)] for p in range(args.p_max + 1)],
        "mismatch": status != EXIT_OK,
    }
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_br_sequence(args):
    F = _family(args)
    rep = br_multiplicity_sequence(F, args.budget, method=args.method)
    lines = [
        f"e^{j} = {v}    bases {ex.bases[0]} {ex.bases[1]}"
        for j, (v, ex) in enumerate(zip(rep.sequence, rep.evidence))
    ]
    lines.append(", ".join(f"e^{j} = {v}" for j, v in enumerate(rep.sequence)))
    bad = rep.violations()
    lines += [f"warning: {b}" for b in bad]
    payload = {
        "sequence": rep.sequence,
        "bases": [list(map(list, ex.bases)) for ex in rep.evidence],
        "method": rep.method,
        "note": rep.note,
        "violations": bad,
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_verify(args):
    if args.builtin_corpus:
        corpus = list(builtin_corpus().values())
    elif args.file:
        corpus = [_family(args)]
    else:
        raise UsageError("verify needs FILE or --builtin-corpus")
    which = CHECKS if args.which == "all" else tuple(args.which.split(","))
    unknown = set(which) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks {sorted(unknown)}; choose from {', '.join(CHECKS)}")
    config = RunConfig(
        which=which, budget=args.budget, p_max=args.p_max, q_max=args.q_max,
        samples=args.samples, seed=args.seed, threads=args.threads,
    )
    try:
        reports = run_corpus(corpus, config, strict=True)
        status = EXIT_OK
    except VerificationFailure as exc:
        reports = exc.reports
        status = EXIT_VERIFY
    counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "inapplicable")}
    lines = [f"{r.verdict:<12} {r.theorem:<18} {r.family}" for r in reports if r.verdict != "pass" or args.verbose]
    lines.append(f"{len(reports)} checks: {counts['pass']} pass, {counts['fail']} fail, {counts['inapplicable']} inapplicable")
    _emit(args, {"summary": counts, "reports": [r.to_dict() for r in reports]}, "\n".join(lines))
    return status


# ---------------------------------------------------------------- wiring


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes (0 = one per CPU)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="base-point advances allowed")
    common.add_argument("--allow-non-primary", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="brmult", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (
        ("colength", cmd_colength, "colength of each ideal"),
        ("multiplicity", cmd_multiplicity, "Hilbert-Samuel and Buchsbaum-Rim multiplicities"),
        ("mixed", cmd_mixed, "mixed multiplicities"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("br-function", parents=[common], help="table of Lambda(p, q)")
    p.add_argument("file")
    p.add_argument("--p-max", type=int, default=3)
    p.add_argument("--q-max", type=int, default=12)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--brute", dest="mode", action="store_const", const="brute")
    mode.add_argument("--fast", dest="mode", action="store_const", const="fast")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(func=cmd_br_function, mode="auto")

    p = sub.add_parser("br-sequence", parents=[common], help="associated multiplicities e^0..e^{d+r-1}")
    p.add_argument("file")
    p.add_argument("--method", choices=("fast", "brute", "both"), default="fast")
    p.set_defaults(func=cmd_br_sequence)

    p = sub.add_parser("verify", parents=[common], help="run the verification checks")
    p.add_argument("file", nargs="?")
    p.add_argument("--builtin-corpus", action="store_true")
    p.add_argument("--which", default="all", help=f"'all' or comma list of: {', '.join(CHECKS)}")
    p.add_argument("--p-max", type=int, default=3)
    p.add_argument("--q-max", type=int, default=18)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    for opt in ("p_max", "q_max", "budget", "samples"):
        if getattr(args, opt, 0) < 0:
            print(f"brmult: error: --{opt.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (FamilyParseError, UsageError, OSError) as exc:
        print(f"brmult: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvaluatorMismatch as exc:
        print(f"brmult: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except StabilizationError as exc:
        print(f"brmult: computation failed: {exc}", file=sys.stderr)
        for base, value in exc.trace:
            print(f"  base {base}: {value}", file=sys.stderr)
        return EXIT_COMPUTE
    except NotPrimaryError as exc:
        print(f"brmult: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
