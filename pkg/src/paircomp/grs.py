"""Generalized row sums and the continuous least-squares relaxation.

The row sums are obtained by an exact rational solve of

    (1 + eps d_i) x_i - eps sum_k m_ik x_k = (1 + eps m n) s_i,

where ``d_i`` is the number of comparisons of ``X_i`` and ``s_i`` its plain
row sum.  The relaxed least-squares problem is continuous and solved in
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.optimize import brentq

from .core import (
    ComparisonArray,
    Outcome,
    WeakOrder,
    aggregate,
    as_fraction,
    copeland_in_array,
    squared_norm_linear,
)
from .errors import (
    BadParameter,
    DegenerateArray,
    DegenerateN,
    NegativeEpsilon,
    NotSkewSymmetric,
    UndefinedOutcome,
)


def reasonable_epsilon_max(n: int, m: int) -> Fraction:
    """Largest ``eps`` keeping every maximal win's contribution non-negative."""
    if n <= 2:
        raise DegenerateN(f"the reasonable bound 1/(m(n-2)) is undefined for n={n}")
    if m < 1:
        raise BadParameter(f"m must be positive, got {m}")
    return Fraction(1, m * (n - 2))


def row_sums(array: ComparisonArray) -> tuple[Fraction, ...]:
    s = [Fraction(0)] * array.n
    for o in array.outcomes:
        s[o.i] += o.rij
        s[o.j] += o.rji
    return tuple(s)


def solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; raises ``ZeroDivisionError`` if singular."""
    n = len(b)
    a = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f /= p
                row, prow = a[r], a[col]
                for c in range(col, n + 1):
                    row[c] -= f * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n] - sum((a[r][c] * x[c] for c in range(r + 1, n)), Fraction(0))
        x[r] = acc / a[r][r]
    return x


@dataclass(frozen=True)
class GrsSolution:
    x: tuple[Fraction, ...]
    epsilon: Fraction
    array: ComparisonArray

    def residual(self) -> tuple[Fraction, ...]:
        """Left minus right side of the defining equations; exactly zero."""
        arr, eps = self.array, self.epsilon
        mn = arr.m * arr.n
        res = list(self.x)
        for o in arr.outcomes:
            for i, k, r in ((o.i, o.j, o.rij), (o.j, o.i, o.rji)):
                res[i] -= r + eps * (self.x[k] - self.x[i] + r * mn)
        return tuple(res)


def solve_grs(array: ComparisonArray, epsilon: Any, *, allow_negative: bool = False) -> GrsSolution:
    """Generalized row sums of a skew-symmetric array.

    ``allow_negative`` admits ``eps < 0`` (used only to express stationary
    points of the relaxed least-squares problem); the system may then be
    singular.
    """
    eps = as_fraction(epsilon)
    if eps < 0 and not allow_negative:
        raise NegativeEpsilon(f"epsilon must be non-negative, got {eps}")
    if not array.skew_symmetric:
        raise NotSkewSymmetric("generalized row sums need r_ji = -r_ij for every comparison")
    n = array.n
    counts = aggregate(array).counts
    s = row_sums(array)
    mn = array.m * n
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 1 + eps * sum(counts[i])
        for k in range(n):
            if k != i and counts[i][k]:
                a[i][k] = -eps * counts[i][k]
    b = [(1 + eps * mn) * si for si in s]
    return GrsSolution(tuple(solve_exact(a, b)), eps, array)


def grs_ranking(sol: GrsSolution) -> WeakOrder:
    """Order by decreasing generalized row sum; equal sums tie."""
    return WeakOrder.from_scores(sol.x)


def contribution(sol: GrsSolution, i: int, k: int, p: int) -> Fraction:
    """Contribution of outcome ``r_ik^p`` to ``x_i`` (0-based indexes)."""
    r = sol.array.value(p, i, k)
    if r is None or i == k:
        raise UndefinedOutcome(f"r_{i + 1},{k + 1} of individual {p + 1} is undefined")
    mn = sol.array.m * sol.array.n
    return r + sol.epsilon * (sol.x[k] - sol.x[i] + r * mn)


def build_skew_array(array: ComparisonArray) -> ComparisonArray:
    """Array of net scores ``r_ij^p - r_ji^p``; bounds become ``+-(r_max - r_min)``."""
    span = array.r_max - array.r_min
    outs = tuple(Outcome(o.p, o.i, o.j, o.rij - o.rji, o.rji - o.rij) for o in array.outcomes)
    return ComparisonArray(array.n, array.m, -span, span, outs)


# ------------------------------------------------------ relaxed least squares


@dataclass(frozen=True)
class RelaxedSolution:
    y: np.ndarray
    lam: float
    objective: float
    beta: float
    degenerate: bool = False
    hard_case: bool = False

    @property
    def epsilon_star(self) -> float:
        """Row-sum parameter reproducing the direction of ``y`` (``inf`` when ``lam == 0``)."""
        return math.inf if self.lam == 0 else 2 * self.beta ** 2 / -self.lam


def _float_data(array: ComparisonArray):
    n = array.n
    lap = np.zeros((n, n))
    for i, row in enumerate(aggregate(array).counts):
        for k, c in enumerate(row):
            if k != i:
                lap[i, k] = -c
        lap[i, i] = sum(row)
    t = np.array([float(v) for v in copeland_in_array(array)])
    return lap, t


def relaxed_objective(array: ComparisonArray, beta: float, y: np.ndarray) -> float:
    return float(sum((float(r) - beta * (y[i] - y[j])) ** 2 for _, i, j, r in array.entries()))


def relaxed_gradient(array: ComparisonArray, beta: float, y: np.ndarray) -> np.ndarray:
    lap, t = _float_data(array)
    return -2 * beta * t + 4 * beta ** 2 * lap @ y


def _zero_sum_basis(n: int) -> np.ndarray:
    """Orthonormal columns spanning ``{y : sum y = 0}`` (Helmert construction)."""
    q = np.zeros((n, n - 1))
    for k in range(1, n):
        q[:k, k - 1] = 1.0
        q[k, k - 1] = -k
        q[:, k - 1] /= math.sqrt(k * (k + 1))
    return q


def relaxed_beta_ls(array: ComparisonArray, beta: Any, *, tol: float = 1e-13) -> RelaxedSolution:
    """Global minimizer of the least-squares fit over the sphere in the zero-sum plane.

    Stationary points satisfy ``(4 beta^2 L - 2 lam I) y = 2 beta t`` on the
    zero-sum subspace (``L`` is the comparison-multigraph Laplacian, ``t`` the
    Copeland vector).  The minimizer is the root of the secular equation with
    ``lam`` below ``2 beta^2`` times the smallest eigenvalue of ``L`` there.
    """
    beta = float(as_fraction(beta))
    if beta <= 0:
        raise BadParameter("beta must be positive")
    n = array.n
    radius = math.sqrt(squared_norm_linear(n))
    lap, t = _float_data(array)
    q = _zero_sum_basis(n)
    mu, vecs = np.linalg.eigh(q.T @ lap @ q)
    coef = vecs.T @ (q.T @ t)
    scale = max(1.0, float(np.abs(mu).max()), float(np.abs(coef).max()))

    if not lap.any() and not t.any():
        y = np.array([n - 1 - 2 * a for a in range(n)], dtype=float)
        return RelaxedSolution(y, 0.0, relaxed_objective(array, beta, y), beta, degenerate=True)

    def coeffs(lam: float) -> np.ndarray:
        return 2 * beta * coef / (4 * beta ** 2 * mu - 2 * lam)

    cap = 2 * beta ** 2 * mu[0]
    near = np.abs(mu - mu[0]) <= 1e-10 * scale
    hard = bool(np.all(np.abs(coef[near]) <= 1e-12 * scale))
    hard_case = False
    if hard:
        rest = ~near
        c = np.zeros_like(coef)
        c[rest] = 2 * beta * coef[rest] / (4 * beta ** 2 * mu[rest] - 2 * cap)
        fill = radius ** 2 - float(c @ c)
        # fill of zero up to rounding: the root sits exactly at the cap
        if fill >= -1e-12 * radius ** 2:
            c[np.argmax(near)] = math.sqrt(max(fill, 0.0))
            lam = cap
            hard_case = True
        else:
            hard = False
    if not hard:
        def phi(lam: float) -> float:
            return 1.0 / np.linalg.norm(coeffs(lam)) - 1.0 / radius

        hi = cap
        step = beta * float(np.linalg.norm(coef)) / radius + 1.0
        lo = cap - step
        while phi(lo) <= 0:
            step *= 2
            lo = cap - step
        # phi decreases to -1/radius as lam approaches cap from below
        gap = max(abs(cap), 1.0) * 1e-15
        while True:
            if gap >= step:
                raise DegenerateArray("secular equation has no root below the cap")
            h = hi - gap
            if np.all(np.isfinite(coeffs(h))):
                if phi(h) < 0:
                    hi = h
                    break
                # moving away from the cap only raises phi
                raise DegenerateArray("secular equation has no root below the cap")
            gap *= 10
        lam = brentq(phi, lo, hi, xtol=tol * max(1.0, abs(lo)), rtol=4 * np.finfo(float).eps,
                     maxiter=500)
        c = coeffs(lam)
    y = q @ (vecs @ c)
    y -= y.mean()
    y *= radius / np.linalg.norm(y)
    grad = relaxed_gradient(array, beta, y)
    lam = float(grad @ y) / (2 * float(y @ y))
    return RelaxedSolution(y, lam, relaxed_objective(array, beta, y), beta, hard_case=hard_case)


def first_order_residual(array: ComparisonArray, sol: RelaxedSolution) -> float:
    """``||grad f - 2 lam y||`` relative to the size of the gradient's two parts.

    The multiplier of the zero-sum constraint is 0.  The scale is the larger
    of ``||grad f||`` and ``||2 beta t||`` so an interior stationary point
    (``grad f = 0``) is not divided by rounding noise.
    """
    lap, t = _float_data(array)
    grad = relaxed_gradient(array, sol.beta, sol.y)
    norm = max(float(np.linalg.norm(grad)), float(np.linalg.norm(2 * sol.beta * t)))
    res = float(np.linalg.norm(grad - 2 * sol.lam * sol.y))
    return res / norm if norm else res


def linked_row_sums(array: ComparisonArray, sol: RelaxedSolution) -> GrsSolution:
    """Row sums of the net-score array at the parameter matching ``sol``.

    For ``lam > 0`` the matching parameter is negative and the row-sum
    equations are solved outside their usual range.
    """
    if sol.degenerate or sol.hard_case or sol.lam == 0:
        raise DegenerateArray("relaxed solution is not determined by a row-sum system")
    eps = Fraction(sol.epsilon_star)
    return solve_grs(build_skew_array(array), eps, allow_negative=True)


def cosine(u, v) -> float:
    u = np.asarray([float(a) for a in u])
    v = np.asarray([float(a) for a in v])
    return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))
