"""Run every theorem suite and print the reports; exit 3 if any check fails."""

import argparse
import sys

from paircomp.suites import SUITES, run_theorem_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true", help="show every check")
    args = ap.parse_args()
    ok = True
    for sid in sorted(SUITES):
        rep = run_theorem_suite(sid)
        print(rep.render(verbose=args.verbose))
        ok &= rep.passed
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
