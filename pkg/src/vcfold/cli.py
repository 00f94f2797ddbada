"""Command-line entry point: ``vcfold <command> ...``.

Every command prints a JSON run report on stdout. Exit status:

* 0: done, every checked claim held
* 1: tool error (bad input, range, I/O)
* 2: usage error (argparse)
* 3: search budget exceeded
* 4: a checked mathematical claim was violated
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import familyfile
from .construct import complete_chain, cube_minus_two, family_a_ri, highsets, lowsets, mod_d_family
from .core import SetFamily, SetOp, kfold, vc_dimension
from .formula import (
    BoundReport,
    conjecture_value,
    katona_bound,
    main_bound,
    n0_report,
    sauer_shelah_bound,
)
from .search import (
    BudgetExceeded,
    SearchResult,
    max_kwise_intersecting,
    max_kwise_union,
    max_two_sided_vc,
    max_vc_delta,
)
from .search.result import BUDGET_ENV, DEFAULT_WITNESS_CAP
from .verify import DEFAULT_SEED, DEFAULT_TRIALS, SUITES, run_suite

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 3
EXIT_VIOLATION = 4


class ClaimViolated(Exception):
    """Carries a finished report whose checks found a violated claim."""

    def __init__(self, report: dict):
        self.report = report
        super().__init__("claim violated")


def _report(command: str, parameters: dict, provenance: str, result: dict, *, seed: int | None = None,
            nodes: int | None = None, elapsed: float = 0.0, witnesses: list[SetFamily] | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "provenance": provenance,
        "result": result,
        "witnesses": [w.as_sets() for w in witnesses or []],
        "nodes_explored": nodes,
        "seed": seed,
        "elapsed_seconds": round(elapsed, 6),
    }


def _search_result(res: SearchResult) -> dict:
    return {"value": res.value, "exact": res.exact, "unique_up_to_relabelling": res.unique_up_to_relabelling,
            "witness_classes": len(res.witnesses), "witness_cap_hit": res.witness_cap_hit, "info": res.info}


def cmd_vc(args) -> dict:
    start = time.perf_counter()
    fam = familyfile.read(args.input)
    if args.op is None:
        target = fam
    else:
        target = kfold(fam, SetOp.parse(args.op), args.k)
    result = {"vc_dimension": vc_dimension(target), "family_size": len(fam), "target_size": len(target)}
    params = {"input": str(args.input), "n": fam.n, "op": args.op, "k": args.k if args.op else None}
    return _report("vc", params, "core", result, elapsed=time.perf_counter() - start)


def cmd_search(args) -> dict:
    kind = args.kind
    common = dict(witness_cap=args.witness_cap, budget=args.budget)
    params = {"kind": kind, "n": args.n, "k": args.k, "d": args.d, "t": args.t}
    checks: dict = {}
    if kind == "p":
        _need(args, "k", "d")
        res = max_kwise_union(args.n, args.k, args.d, shifted=not args.no_shift,
                              seed_incumbent=not args.no_seed, certify_unique=args.unique,
                              workers=args.workers, **common)
        conj = conjecture_value(args.n, args.k, args.d)
        checks = {"conjecture": conj.as_dict(), "largest_i_candidate": main_bound(args.n, args.k, args.d).value,
                  "conjecture_holds": res.value == conj.value}
        params.update(shifted=not args.no_shift, seeded=not args.no_seed, unique=args.unique)
    elif kind == "m":
        _need(args, "k", "t")
        res = max_kwise_intersecting(args.n, args.k, args.t, shifted=not args.no_shift,
                                     seed_incumbent=not args.no_seed, certify_unique=args.unique,
                                     workers=args.workers, **common)
    elif kind == "pprime":
        _need(args, "k", "d")
        mode = args.mode or "compressed"
        res = max_vc_delta(args.n, args.k, args.d, mode, **common)
        params["mode"] = mode
        if 0 < args.d < args.n:
            p = max_kwise_union(args.n, args.k, args.d).value
            checks = {"p": p, "equivalence_holds": p == res.value}
    else:
        _need(args, "d")
        res = max_two_sided_vc(args.n, args.d, args.mode, witness_cap=args.witness_cap)
        params["mode"] = args.mode
    report = _report("search", params, "search", {**_search_result(res), "checks": checks},
                     nodes=res.nodes_explored, elapsed=res.elapsed, witnesses=res.witnesses)
    if checks.get("conjecture_holds") is False or checks.get("equivalence_holds") is False:
        raise ClaimViolated(report)
    return report


def _need(args, *names: str) -> None:
    missing = [f"--{x}" for x in names if getattr(args, x) is None]
    if missing:
        raise ValueError(f"search {args.kind} needs {' '.join(missing)}")


def cmd_formula(args) -> dict:
    which = args.which
    if which == "sauer":
        rep = BoundReport("sauer", sauer_shelah_bound(args.n, args.d), {"n": args.n, "d": args.d})
    elif which == "katona":
        rep = katona_bound(args.n, args.d)
    elif which == "main":
        rep = main_bound(args.n, args.k, args.d)
    elif which == "conjecture":
        rep = conjecture_value(args.n, args.k, args.d)
    else:
        rep = n0_report(args.d, args.k)
    params = {"which": which, "n": args.n, "k": args.k, "d": args.d}
    return _report("formula", params, "formula", rep.as_dict())


def cmd_verify(args) -> dict:
    names = sorted(SUITES) if "all" in args.suites else args.suites
    start = time.perf_counter()
    results = [run_suite(s, trials=args.trials, seed=args.seed, max_n=args.max_n) for s in names]
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}: {r.checks} checks - {r.claim}", file=sys.stderr)
    params = {"suites": names, "trials": args.trials, "max_n": args.max_n}
    report = _report("verify", params, "verify", {"passed": all(r.passed for r in results),
                                                  "suites": [r.as_dict() for r in results]},
                     seed=args.seed, elapsed=time.perf_counter() - start)
    if not report["result"]["passed"]:
        raise ClaimViolated(report)
    return report


CONSTRUCTORS = {
    "ari": lambda a: family_a_ri(a.n, a.r, a.i),
    "modd": lambda a: mod_d_family(a.n, a.d),
    "lowsets": lambda a: lowsets(a.n, a.d),
    "highsets": lambda a: highsets(a.n, a.d),
    "chain": lambda a: complete_chain(a.n),
    "cube2": lambda a: cube_minus_two(a.n),
}


def cmd_construct(args) -> dict:
    needs = {"ari": ("r", "i"), "modd": ("d",), "lowsets": ("d",), "highsets": ("d",)}
    missing = [f"--{x}" for x in needs.get(args.which, ()) if getattr(args, x) is None]
    if missing:
        raise ValueError(f"construct {args.which} needs {' '.join(missing)}")
    fam = CONSTRUCTORS[args.which](args)
    params = {"which": args.which, "n": args.n, "r": args.r, "i": args.i, "d": args.d,
              "output": str(args.output) if args.output else None}
    if args.output:
        familyfile.write(args.output, fam, [f"construct {args.which}"])
    result = {"size": len(fam), "vc_dimension": vc_dimension(fam)}
    return _report("construct", params, "construct", result, witnesses=[fam] if not args.output else None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcfold", description=__doc__.splitlines()[0])
    parser.add_argument("--report", type=Path, help="also write the JSON report to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vc", help="VC dimension of a family file, or of its k-fold closure")
    p.add_argument("input", type=Path, help="family file")
    p.add_argument("--op", choices=["cap", "cup", "sym"], help="measure the k-fold closure under this operation")
    p.add_argument("--k", type=int, default=2, help="closure arity (default 2)")
    p.set_defaults(func=cmd_vc)

    p = sub.add_parser("search", help="exact extremal searches",
                       epilog=f"node budget defaults to ${BUDGET_ENV} when set")
    p.add_argument("kind", choices=["p", "pprime", "m", "two-sided"],
                   help="p: k-wise union, pprime: bounded VC of k-fold symmetric difference, "
                        "m: k-wise t-intersecting, two-sided: pairwise union and intersection VC")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--mode", choices=["exhaustive", "compressed", "witness"])
    p.add_argument("--no-shift", action="store_true", help="search all down-sets, not only shifted ones")
    p.add_argument("--no-seed", action="store_true", help="start from an empty incumbent")
    p.add_argument("--unique", action="store_true", help="certify uniqueness up to relabelling")
    p.add_argument("--budget", type=int, help="node budget")
    p.add_argument("--workers", type=int, default=1, help="worker processes for the down-set search")
    p.add_argument("--witness-cap", type=int, default=DEFAULT_WITNESS_CAP,
                   help="maximum number of witness classes kept")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("formula", help="closed-form bounds")
    p.add_argument("which", choices=["sauer", "katona", "main", "conjecture", "n0"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="+", choices=sorted(SUITES) + ["all"])
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="trials per randomized suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-n", type=int, help="override the largest ground set a suite visits")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="write a named family to a family file")
    p.add_argument("which", choices=sorted(CONSTRUCTORS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("-o", "--output", type=Path, help="write the family here instead of into the report")
    p.set_defaults(func=cmd_construct)
    return parser


def _emit(report: dict, path: Path | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if path is not None:
        path.write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "formula":
        required = {"sauer": ("n",), "katona": ("n",), "main": ("n", "k"), "conjecture": ("n", "k"), "n0": ("k",)}
        missing = [f"--{x}" for x in required[args.which] if getattr(args, x) is None]
        if missing:
            print(f"vcfold: formula {args.which} needs {' '.join(missing)}", file=sys.stderr)
            return EXIT_ERROR
    try:
        report = args.func(args)
    except ClaimViolated as exc:
        _emit(exc.report, args.report)
        print("vcfold: a checked claim was violated", file=sys.stderr)
        return EXIT_VIOLATION
    except BudgetExceeded as exc:
        print(f"vcfold: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"vcfold: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(report, args.report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
