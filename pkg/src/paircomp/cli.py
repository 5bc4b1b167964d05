"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 failed theorem suite.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from collections.abc import Sequence
from fractions import Fraction

from .axioms import Axiom, AuditReport, audit_order
from .core import ComparisonArray, enumerate_linear_orders, enumerate_weak_orders, format_fraction, ordered_bell, parse_order
from .errors import BadIndex, PairCompError
from .fixtures import MINIMA, make_fixture
from .io import RunRecord, digest, dumps_array, load_array, save_run
from .objectives import METHODS, MethodSpec, optimize
from .structfun import PsiKind
from .suites import SUITES, run_theorem_suite

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_SUITE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(q) -> str:
    return "none" if q is None else format_fraction(Fraction(q))


def _add_selectors(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="JSON array file")
    src.add_argument("--fixture", choices=sorted(MINIMA), help="built-in example array")
    p.add_argument("--n", type=int, help="fixture size")
    p.add_argument("--m", type=int, help="fixture individuals")
    p.add_argument("--domain", default="weak", choices=["weak", "linear"])
    p.add_argument("--beta", help="least-squares parameter (rational)")
    p.add_argument("--epsilon", help="row-sum parameter: rational or 'reasonable-max'")
    p.add_argument("--alpha", help="row-sum assignment parameter (rational)")
    p.add_argument("--psi", default="plus", choices=[k.value for k in PsiKind])
    p.add_argument("--cap", type=int, help="largest n to enumerate")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--output", default="text", choices=["text", "json"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paircomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rank = sub.add_parser("rank", help="optimal orders of a method")
    _add_selectors(rank)
    rank.add_argument("--method", required=True, choices=METHODS)
    rank.add_argument("--all-optima", action="store_true", help="print every optimal order")
    rank.add_argument("--save-run", metavar="PATH", help="write a run record")

    audit = sub.add_parser("audit", help="SC/SCM audit of an order or of a method's optima")
    _add_selectors(audit)
    what = audit.add_mutually_exclusive_group(required=True)
    what.add_argument("--order", help="e.g. '[X1] > [X2 X3] > [X4]'")
    what.add_argument("--method", choices=METHODS)
    audit.add_argument("--axiom", default="scm", choices=["sc", "scm"])
    audit.add_argument("--exclude-direct", action="store_true",
                       help="ignore the outcomes between the two confronted alternatives")
    audit.add_argument("--no-self-match", action="store_true",
                       help="forbid matching a shared outcome with itself")
    audit.add_argument("--check-direct", action="store_true",
                       help="list pairs whose verdict depends on their direct outcomes")

    fix = sub.add_parser("fixture", help="write a built-in example array as JSON")
    fix.add_argument("--name", required=True, choices=sorted(MINIMA))
    fix.add_argument("--n", type=int)
    fix.add_argument("--m", type=int)
    fix.add_argument("--r-max", default="1")
    fix.add_argument("--r-min")
    fix.add_argument("--out", metavar="PATH", help="file to write (default stdout)")

    thm = sub.add_parser("theorem", help="run a theorem verification suite")
    thm.add_argument("--id", required=True, choices=sorted(SUITES) + ["all"])
    thm.add_argument("--verbose", action="store_true")
    thm.add_argument("--output", default="text", choices=["text", "json"])

    enum_ = sub.add_parser("enumerate", help="count (or list) weak orders")
    enum_.add_argument("--n", type=int, required=True)
    enum_.add_argument("--linear", action="store_true", help="linear orders only")
    enum_.add_argument("--list", action="store_true", help="print the orders")
    return parser


def _array(args) -> ComparisonArray:
    if args.input:
        return load_array(args.input)
    params = {k: v for k, v in (("n", args.n), ("m", args.m)) if v is not None}
    return make_fixture(args.fixture, **params)


def _spec(args, method: str) -> MethodSpec:
    return MethodSpec(method, domain=args.domain, beta=args.beta, alpha=args.alpha,
                      epsilon=args.epsilon, psi=args.psi)


def _report_dict(rep: AuditReport) -> dict:
    return {
        "order": str(rep.order),
        "axiom": rep.axiom.value,
        "ok": rep.ok,
        "violations": [{"i": v.i + 1, "j": v.j + 1, "premise": v.premise,
                        "witness": v.witness.describe() if v.witness else None}
                       for v in rep.violations],
        "direct_flips": [[i + 1, j + 1] for i, j in rep.direct_flips],
    }


def cmd_rank(args, out) -> int:
    arr = _array(args)
    spec = _spec(args, args.method)
    start = time.perf_counter()
    opt = optimize(spec, arr, cap=args.cap, jobs=args.jobs)
    wall = time.perf_counter() - start
    shown = opt.orders if args.all_optima else opt.orders[:1]
    extra = {k: ([_fmt(v) for v in val] if isinstance(val, tuple) else _fmt(val))
             for k, val in opt.extra.items()}
    if args.output == "json":
        doc = {"method": spec.method, "sense": None if opt.value is None else spec.sense, "domain": spec.domain,
               "value": None if opt.value is None else _fmt(opt.value),
               "n_optimal": len(opt), "orders": [str(o) for o in shown], **extra}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        domain = "linear" if spec.domain == "L" else "weak"
        sense = "" if opt.value is None else f" ({spec.sense})"
        out.write(f"method {spec.method}{sense} over {domain} orders\n")
        if opt.value is not None:
            out.write(f"optimal value: {_fmt(opt.value)}\n")
        for k, val in extra.items():
            out.write(f"{k} = {', '.join(val) if isinstance(val, list) else val}\n")
        out.write(f"optimal orders: {len(opt)}\n")
        for o in shown:
            out.write(f"  {o}\n")
    if args.save_run:
        rec = RunRecord(
            method={"method": spec.method, "domain": spec.domain, "beta": _fmt(spec.beta),
                    "alpha": _fmt(spec.alpha), "epsilon": str(spec.epsilon), "psi": spec.psi.value},
            input_digest=digest(arr),
            value=None if opt.value is None else _fmt(opt.value),
            orders=tuple(str(o) for o in opt.orders),
            wall_time=wall,
            extra=extra,
        )
        save_run(rec, args.save_run)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    arr = _array(args)
    kw = {"include_direct": not args.exclude_direct, "allow_self_match": not args.no_self_match,
          "check_direct": args.check_direct}
    if args.order:
        orders = [parse_order(args.order, arr.n)]
    else:
        orders = list(optimize(_spec(args, args.method), arr, cap=args.cap, jobs=args.jobs).orders)
    reports = [audit_order(arr, o, Axiom(args.axiom), **kw) for o in orders]
    if args.output == "json":
        out.write(json.dumps({"axiom": args.axiom, "reports": [_report_dict(r) for r in reports],
                              "ok": all(r.ok for r in reports)}, indent=1) + "\n")
        return EXIT_OK
    for rep in reports:
        status = "consistent" if rep.ok else f"{len(rep.violations)} violation(s)"
        out.write(f"{rep.order}: {args.axiom.upper()} {status}\n")
        for v in rep.violations:
            out.write(f"  X{v.i + 1} vs X{v.j + 1}: {v.premise} premise ({v.witness.describe()})\n")
        for i, j in rep.direct_flips:
            out.write(f"  X{i + 1} vs X{j + 1}: verdict changes without direct outcomes\n")
    return EXIT_OK


def cmd_fixture(args, out) -> int:
    params = {k: v for k, v in (("n", args.n), ("m", args.m), ("r_min", args.r_min)) if v is not None}
    arr = make_fixture(args.name, r_max=args.r_max, **params)
    text = dumps_array(arr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_theorem(args, out) -> int:
    ids = sorted(SUITES) if args.id == "all" else [args.id]
    reports = [run_theorem_suite(i) for i in ids]
    if args.output == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=1) + "\n")
    else:
        for r in reports:
            out.write(r.render(verbose=args.verbose) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_SUITE


def cmd_enumerate(args, out) -> int:
    if args.list:
        gen = enumerate_linear_orders(args.n) if args.linear else enumerate_weak_orders(args.n)
        count = 0
        for o in gen:
            out.write(f"{o}\n")
            count += 1
        out.write(f"{count}\n")
    elif args.n < 1:
        raise BadIndex(f"need at least 1 alternative, got n={args.n}")
    else:
        out.write(f"{math.factorial(args.n) if args.linear else ordered_bell(args.n)}\n")
    return EXIT_OK


COMMANDS = {"rank": cmd_rank, "audit": cmd_audit, "fixture": cmd_fixture,
            "theorem": cmd_theorem, "enumerate": cmd_enumerate}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except PairCompError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
