"""Discrete aggregation objectives and exhaustive exact optimization.

Every objective is a function of the Copeland index vector ``rho`` of a
tentative weak order.  By default the weak-order-safe structure functions
``C'_k`` are used; over linear orders they select the same optima as ``C_k``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

from .core import (
    DEFAULT_CAP,
    DEFAULT_LINEAR_CAP,
    AggregateMatrix,
    ComparisonArray,
    WeakOrder,
    aggregate,
    as_fraction,
    enumerate_linear_orders,
    enumerate_weak_orders,
    squared_norm_linear,
)
from .errors import BadParameter, MissingParameter
from .structfun import Family, PsiKind, PsiVariant, StructureFunctionId, evaluate

WQA = tuple(f"wqa_{k}" for k in range(1, 7))
KEMENY = tuple(f"kemeny_{k}" for k in range(1, 4))
WALB_VARIANTS = {
    "walb": "7a",
    "walb_refined": "7b",
    "walb_net": "7c",
    "walb_net_refined": "7d",
    "walb_net_diff": "7e",
}
NET_METHODS = ("net_back", "walb_net", "walb_net_refined", "walb_net_diff")
METHODS = WQA + KEMENY + ("net_back",) + tuple(WALB_VARIANTS) + ("beta_ls", "grs_qap", "grs")
MAXIMIZE = frozenset(WQA + ("net_back", "grs_qap"))

# methods whose objective depends on rho only through sign(rho_i - rho_j) on compared pairs
SIGN_ONLY = frozenset(
    ("wqa_1", "wqa_2", "wqa_3") + KEMENY
    + ("net_back", "walb", "walb_refined", "walb_net", "walb_net_refined")
)


@dataclass(frozen=True)
class MethodSpec:
    """A method id with its parameters.

    ``epsilon`` may be the string ``"reasonable-max"``; ``alpha=None`` for
    ``grs_qap`` selects a value small enough to reproduce the row-sum order.
    """

    method: str
    domain: str = "W"
    beta: Fraction | None = None
    alpha: Fraction | None = None
    epsilon: Fraction | str | None = None
    psi: PsiKind = PsiKind.PLUS
    family: Family = Family.CPRIME

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise BadParameter(f"unknown method {self.method!r}")
        dom = {"w": "W", "weak": "W", "l": "L", "linear": "L"}.get(str(self.domain).lower())
        if dom is None:
            raise BadParameter(f"domain must be W or L, got {self.domain!r}")
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "psi", PsiKind(self.psi))
        object.__setattr__(self, "family", Family(self.family))
        for name in ("beta", "alpha"):
            v = getattr(self, name)
            if v is not None:
                v = as_fraction(v)
                if v <= 0:
                    raise BadParameter(f"{name} must be positive, got {v}")
                object.__setattr__(self, name, v)
        if self.epsilon is not None and self.epsilon != "reasonable-max":
            object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.method == "beta_ls" and self.beta is None:
            raise MissingParameter("beta_ls needs beta")

    @property
    def sense(self) -> str:
        return "maximize" if self.method in MAXIMIZE else "minimize"


@dataclass(frozen=True)
class OptimalSet:
    """Exact optimum and every order attaining it, in canonical sequence.

    ``value`` is ``None`` for the row-sum method, whose single order is not
    the extremum of an objective.
    """

    value: Fraction | None
    orders: tuple[WeakOrder, ...]
    spec: MethodSpec | None = field(default=None, compare=False)
    extra: dict = field(default_factory=dict, compare=False)

    def __contains__(self, order: object) -> bool:
        return order in self.orders

    def __len__(self) -> int:
        return len(self.orders)


# ---------------------------------------------------------------- objectives


def wqa_objective(agg: AggregateMatrix, k: int, order: WeakOrder,
                  family: Family = Family.CPRIME) -> Fraction:
    """``sum_ij r_ij C_k(rho_i, rho_j)``."""
    fid = StructureFunctionId(family, k)
    rho = order.rho
    n = agg.n
    return sum(
        (agg.r[i][j] * evaluate(fid, rho[i], rho[j]) for i in range(n) for j in range(n) if i != j),
        Fraction(0),
    )


def kemeny_objective(array: ComparisonArray, k: int, order: WeakOrder,
                     family: Family = Family.CPRIME) -> Fraction:
    """Sum of ``|r_ij^p - C_k(rho_i, rho_j)|`` over both directions of every comparison."""
    if k not in (1, 2, 3):
        raise BadParameter(f"Kemeny extension index must be 1..3, got {k}")
    fid = StructureFunctionId(family, k)
    rho = order.rho
    return sum(
        (abs(r - evaluate(fid, rho[i], rho[j])) for _, i, j, r in array.entries()),
        Fraction(0),
    )


def _net(agg: AggregateMatrix, psi: PsiVariant, i: int, j: int) -> Fraction:
    return psi(agg.r[i][j] - agg.r[j][i])


def net_back_objective(agg: AggregateMatrix, psi: PsiVariant, order: WeakOrder,
                       family: Family = Family.CPRIME) -> Fraction:
    fid = StructureFunctionId(family, 3)
    rho = order.rho
    n = agg.n
    total = Fraction(0)
    for i in range(n):
        for j in range(n):
            if agg.counts[i][j] > 0:
                total += _net(agg, psi, i, j) * evaluate(fid, rho[i], rho[j])
    return total


def walb_objective(variant: str, agg: AggregateMatrix, psi: PsiVariant, order: WeakOrder,
                   family: Family = Family.CPRIME) -> Fraction:
    """Absolute imbalance between wins above and losses below, summed over alternatives.

    ``variant`` is one of ``7a`` (plain), ``7b`` (refined), ``7c`` (net),
    ``7d`` (refined net) and ``7e`` (net difference, built on ``C_6``).
    """
    if variant not in ("7a", "7b", "7c", "7d", "7e"):
        raise BadParameter(f"unknown WALB variant {variant!r}")
    fid = StructureFunctionId(family, 6 if variant == "7e" else 3)
    refined = variant in ("7b", "7d")
    net = variant in ("7c", "7d", "7e")
    rho = order.rho
    n = agg.n
    total = Fraction(0)
    for i in range(n):
        inner = Fraction(0)
        for j in range(n):
            mij = agg.counts[i][j]
            if mij == 0:
                continue
            if net:
                a, b = _net(agg, psi, i, j), _net(agg, psi, j, i)
            else:
                a, b = agg.r[i][j], agg.r[j][i]
            term = a * evaluate(fid, rho[i], rho[j]) - b * evaluate(fid, rho[j], rho[i])
            inner += term / mij if refined else term
        total += abs(inner)
    return total


def beta_ls_objective(array: ComparisonArray, beta: Any, order: WeakOrder) -> Fraction:
    """Sum of ``(r_ij^p - beta (rho_i - rho_j))^2`` over both directions of every comparison."""
    beta = as_fraction(beta)
    if beta <= 0:
        raise BadParameter("beta must be positive")
    rho = order.rho
    return sum(((r - beta * (rho[i] - rho[j])) ** 2 for _, i, j, r in array.entries()), Fraction(0))


def grs_qap_objective(x: Sequence[Any], alpha: Any, order: WeakOrder) -> Fraction:
    """``sum_i x_i rho_i - alpha rho_i^2``."""
    alpha = as_fraction(alpha)
    rho = order.rho
    return sum((as_fraction(xi) * r - alpha * r * r for xi, r in zip(x, rho)), Fraction(0))


def default_alpha(x: Sequence[Any]) -> Fraction:
    """Largest-gap-safe ``alpha`` for the row-sum assignment objective.

    Any violation of the strict order of ``x`` costs at least the smallest
    positive gap ``delta`` in ``sum x_i rho_i`` while the quadratic term can
    gain at most ``alpha * D_n^2``; ``alpha = delta / (2 D_n^2)`` keeps the
    optimum unique and ordered exactly as ``x``.
    """
    xs = sorted({as_fraction(v) for v in x})
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    delta = min(gaps) if gaps else Fraction(1)
    return delta / (2 * squared_norm_linear(len(x)))


# ------------------------------------------------------------- optimization


def _psi_for(spec: MethodSpec, array: ComparisonArray) -> PsiVariant:
    return PsiVariant(spec.psi, array.r_min, array.r_max)


def resolve_epsilon(spec: MethodSpec, array: ComparisonArray) -> Fraction:
    from .grs import reasonable_epsilon_max

    if spec.epsilon is None:
        raise MissingParameter(f"{spec.method} needs epsilon")
    if spec.epsilon == "reasonable-max":
        return reasonable_epsilon_max(array.n, array.m)
    return spec.epsilon


def grs_scores(spec: MethodSpec, array: ComparisonArray) -> tuple[Fraction, ...]:
    from .grs import solve_grs

    return solve_grs(array, resolve_epsilon(spec, array)).x


def objective_function(spec: MethodSpec, array: ComparisonArray) -> Callable[[WeakOrder], Fraction]:
    """The objective of ``spec`` on ``array`` as a function of the order."""
    m = spec.method
    fam = spec.family
    if m in WQA:
        agg = aggregate(array)
        k = int(m[-1])
        return lambda order: wqa_objective(agg, k, order, fam)
    if m in KEMENY:
        k = int(m[-1])
        return lambda order: kemeny_objective(array, k, order, fam)
    if m == "net_back":
        agg, psi = aggregate(array), _psi_for(spec, array)
        return lambda order: net_back_objective(agg, psi, order, fam)
    if m in WALB_VARIANTS:
        agg, psi, variant = aggregate(array), _psi_for(spec, array), WALB_VARIANTS[m]
        return lambda order: walb_objective(variant, agg, psi, order, fam)
    if m == "beta_ls":
        beta = spec.beta
        return lambda order: beta_ls_objective(array, beta, order)
    if m == "grs_qap":
        x = grs_scores(spec, array)
        alpha = spec.alpha if spec.alpha is not None else default_alpha(x)
        return lambda order: grs_qap_objective(x, alpha, order)
    raise BadParameter(f"{m} has no objective function")


def domain_orders(spec: MethodSpec, n: int, cap: int | None = None) -> Iterable[WeakOrder]:
    if spec.domain == "L":
        return enumerate_linear_orders(n, DEFAULT_LINEAR_CAP if cap is None else cap)
    return enumerate_weak_orders(n, DEFAULT_CAP if cap is None else cap)


def _lcm_den(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d


def _table(fid: StructureFunctionId, n: int) -> list[int]:
    """``C(x, y)`` depends on ``x - y`` only; index ``d + 2n`` holds ``C(d, 0)``."""
    return [evaluate(fid, d, 0) for d in range(-2 * n, 2 * n + 1)]


def kernel(spec: MethodSpec, array: ComparisonArray) -> tuple[Callable[[Sequence[int]], int], int]:
    """Integer form of the objective: ``objective(order) == f(order.rho) / den``.

    Same values as :func:`objective_function`, computed without Fractions.
    """
    m = spec.method
    n = array.n
    off = 2 * n
    fam = spec.family
    if m in WQA or m in KEMENY:
        k = int(m[-1])
        tab = _table(StructureFunctionId(fam, k), n)
        if m in WQA:
            agg = aggregate(array)
            den = _lcm_den(v for row in agg.r for v in row)
            terms = [(i, j, int(agg.r[i][j] * den)) for i in range(n) for j in range(n)
                     if i != j and agg.r[i][j]]

            def f(rho):
                return sum(r * tab[rho[i] - rho[j] + off] for i, j, r in terms)
            return f, den
        ents = list(array.entries())
        den = _lcm_den(r for *_, r in ents)
        terms = [(i, j, int(r * den)) for _, i, j, r in ents]

        def f(rho):
            return sum(abs(r - den * tab[rho[i] - rho[j] + off]) for i, j, r in terms)
        return f, den
    if m == "net_back" or m in WALB_VARIANTS:
        agg, psi = aggregate(array), _psi_for(spec, array)
        variant = WALB_VARIANTS.get(m)
        net = m == "net_back" or variant in ("7c", "7d", "7e")
        refined = variant in ("7b", "7d")
        tab = _table(StructureFunctionId(fam, 6 if variant == "7e" else 3), n)
        raw = {}
        for i in range(n):
            for j in range(n):
                if agg.counts[i][j]:
                    raw[i, j] = _net(agg, psi, i, j) if net else agg.r[i][j]
        den = _lcm_den(raw.values())
        if refined:
            den = den * _lcm_den(Fraction(1, c) for row in agg.counts for c in row if c)
        weight = {ij: raw[ij] * den / (agg.counts[ij[0]][ij[1]] if refined else 1) for ij in raw}
        weight = {ij: int(w) for ij, w in weight.items()}
        if m == "net_back":
            terms = [(i, j, w) for (i, j), w in weight.items() if w]

            def f(rho):
                return sum(w * tab[rho[i] - rho[j] + off] for i, j, w in terms)
            return f, den
        rows = [[(j, weight[i, j], weight[j, i]) for j in range(n) if (i, j) in weight]
                for i in range(n)]

        def f(rho):
            total = 0
            for i, row in enumerate(rows):
                ri = rho[i]
                total += abs(sum(a * tab[ri - rho[j] + off] - b * tab[rho[j] - ri + off]
                                 for j, a, b in row))
            return total
        return f, den
    if m == "beta_ls":
        ents = list(array.entries())
        scale = _lcm_den([spec.beta] + [r for *_, r in ents])
        b = int(spec.beta * scale)
        terms = [(i, j, int(r * scale)) for _, i, j, r in ents]

        def f(rho):
            return sum((r - b * (rho[i] - rho[j])) ** 2 for i, j, r in terms)
        return f, scale * scale
    if m == "grs_qap":
        x = grs_scores(spec, array)
        alpha = spec.alpha if spec.alpha is not None else default_alpha(x)
        scale = _lcm_den([alpha, *x])
        xs = [int(v * scale) for v in x]
        a = int(alpha * scale)

        def f(rho):
            return sum(xi * r - a * r * r for xi, r in zip(xs, rho))
        return f, scale
    raise BadParameter(f"{m} has no objective function")


def _best(values: Iterable[tuple[int, WeakOrder]], maximize: bool
          ) -> tuple[int | None, list[WeakOrder]]:
    best = None
    orders: list[WeakOrder] = []
    for v, order in values:
        if best is None or (v > best if maximize else v < best):
            best, orders = v, [order]
        elif v == best:
            orders.append(order)
    return best, orders


def _chunk_best(spec: MethodSpec, array: ComparisonArray, chunk: list[WeakOrder]):
    f, _ = kernel(spec, array)
    return _best(((f(o.rho), o) for o in chunk), spec.sense == "maximize")


def optimize(spec: MethodSpec, array: ComparisonArray, *, cap: int | None = None,
             jobs: int = 1, chunk_size: int = 4096) -> OptimalSet:
    """Exact optimal set of ``spec`` on ``array`` by exhaustive enumeration.

    With ``jobs > 1`` disjoint slices of the enumeration are scored in worker
    processes; the merged result does not depend on ``jobs``.
    """
    if spec.method == "grs":
        from .grs import grs_ranking, solve_grs

        sol = solve_grs(array, resolve_epsilon(spec, array))
        return OptimalSet(None, (grs_ranking(sol),), spec, {"x": sol.x, "epsilon": sol.epsilon})
    orders = domain_orders(spec, array.n, cap)
    maximize = spec.sense == "maximize"
    f, den = kernel(spec, array)
    if jobs <= 1:
        value, best = _best(((f(o.rho), o) for o in orders), maximize)
    else:
        chunks = iter(lambda it=iter(orders): list(itertools.islice(it, chunk_size)), [])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_chunk_best, itertools.repeat(spec), itertools.repeat(array), chunks))
        value, _ = _best(((v, None) for v, _ in parts if v is not None), maximize)
        best = [o for v, os in parts if v == value for o in os]
    best.sort(key=WeakOrder.sort_key)
    extra = {}
    if spec.method == "grs_qap":
        x = grs_scores(spec, array)
        extra = {"x": x, "alpha": spec.alpha if spec.alpha is not None else default_alpha(x)}
    return OptimalSet(Fraction(value, den), tuple(best), spec, extra)


def with_domain(spec: MethodSpec, domain: str) -> MethodSpec:
    return replace(spec, domain=domain)
