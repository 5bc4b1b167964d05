"""Scan epsilon above the reasonable bound for a negative maximal-win contribution.

Below the bound every maximal win adds a non-negative amount to the winner's
generalized row sum. This script finds the first epsilon on a grid where that
fails and reports the SC audit of the resulting ranking.
"""

import argparse
from fractions import Fraction

from paircomp.axioms import Axiom, audit_order
from paircomp.core import format_fraction
from paircomp.fixtures import MINIMA, make_fixture
from paircomp.grs import contribution, grs_ranking, reasonable_epsilon_max, solve_grs


def negative_wins(sol):
    arr = sol.array
    for o in arr.outcomes:
        for i, k, r in ((o.i, o.j, o.rij), (o.j, o.i, o.rji)):
            if r == arr.r_max:
                c = contribution(sol, i, k, o.p)
                if c < 0:
                    yield i, k, c


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="figA5", choices=sorted(MINIMA))
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--steps", type=int, default=24, help="grid points per multiple of the bound")
    ap.add_argument("--max-multiple", type=int, default=4)
    args = ap.parse_args()
    arr = make_fixture(args.fixture, n=args.n)
    top = reasonable_epsilon_max(arr.n, arr.m)
    print(f"{args.fixture}(n={arr.n}, m={arr.m}): reasonable bound {format_fraction(top)}")
    for k in range(1, args.steps * args.max_multiple + 1):
        eps = top * Fraction(k, args.steps)
        sol = solve_grs(arr, eps)
        bad = list(negative_wins(sol))
        if bad:
            i, j, c = bad[0]
            order = grs_ranking(sol)
            sc = audit_order(arr, order, Axiom.SC)
            print(f"eps = {format_fraction(eps)}: X{i + 1}'s maximal win over X{j + 1} contributes {format_fraction(c)}")
            print(f"x = {', '.join(format_fraction(v) for v in sol.x)}")
            print(f"ranking {order}: SC {'consistent' if sc.ok else 'violated'}")
            return
    print("no negative maximal-win contribution on the grid")


if __name__ == "__main__":
    main()
