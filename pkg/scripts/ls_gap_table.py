"""Least-squares objective of the linear order versus the X1~X2 tie on the figA5 arrays.

Prints f(rho) - f(rho') next to 4 beta^2 (n-5) and the optimal order.
"""

import argparse
from fractions import Fraction

from paircomp.core import WeakOrder, format_fraction
from paircomp.fixtures import make_fixture
from paircomp.objectives import MethodSpec, beta_ls_objective, optimize


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--betas", default="1/8,1/2,1,3/2")
    args = ap.parse_args()
    betas = [Fraction(b) for b in args.betas.split(",")]
    print(f"{'n':>2} {'beta':>5} {'gap':>8} {'4b^2(n-5)':>10}  optimum")
    for n in range(5, args.n_max + 1):
        arr = make_fixture("figA5", n=n)
        rho = WeakOrder.linear(range(n))
        rho2 = WeakOrder.from_ranks([0, 0, *range(1, n - 1)])
        for beta in betas:
            gap = beta_ls_objective(arr, beta, rho) - beta_ls_objective(arr, beta, rho2)
            best = optimize(MethodSpec("beta_ls", beta=beta), arr)
            print(f"{n:>2} {format_fraction(beta):>5} {format_fraction(gap):>8} "
                  f"{format_fraction(4 * beta ** 2 * (n - 5)):>10}  {best.orders[0]}"
                  + (f" (+{len(best) - 1} more)" if len(best) > 1 else ""))


if __name__ == "__main__":
    main()
