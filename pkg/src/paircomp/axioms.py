"""Self-Consistency and Self-Consistent Monotonicity audits.

Confronting ``X_i`` with ``X_j`` under a weak order asks for a matching
between their outcome sets in which each ``X_i`` outcome is not weaker than
its partner.  For Self-Consistent Monotonicity unmatched ``X_i`` outcomes
must be maximal wins and unmatched ``X_j`` outcomes maximal losses.  The
existence question is a bipartite matching that must saturate every
outcome not allowed to stay unmatched; it is decided by a perfect matching
on a graph padded with one dummy partner per outcome.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field

from .core import ComparisonArray, SideOutcome, WeakOrder, outcomes_of
from .errors import BadParameter
from .objectives import MethodSpec, OptimalSet, domain_orders, kernel, optimize


class Relation(str, enum.Enum):
    INCOMPARABLE = "incomparable"
    NOT_WEAKER = "not_weaker"
    STRONGER = "stronger"


class Axiom(str, enum.Enum):
    SC = "sc"
    SCM = "scm"


def compare_outcomes(o1: SideOutcome, o2: SideOutcome, order: WeakOrder) -> Relation:
    """How outcome ``o1`` of one alternative relates to outcome ``o2`` of another."""
    if not (o1.score >= o2.score and o1.conceded <= o2.conceded
            and order.weakly_prefers(o1.opponent, o2.opponent)):
        return Relation.INCOMPARABLE
    if (o1.score > o2.score or o1.conceded < o2.conceded
            or order.prefers(o1.opponent, o2.opponent)):
        return Relation.STRONGER
    return Relation.NOT_WEAKER


@dataclass(frozen=True)
class ConfrontationWitness:
    """A correspondence proving the premise for ``X_i`` over ``X_j``."""

    matching: tuple[tuple[SideOutcome, SideOutcome], ...]
    extras_i: tuple[SideOutcome, ...]
    extras_j: tuple[SideOutcome, ...]
    strict: bool

    def describe(self) -> str:
        parts = [f"X{u.opponent + 1}/p{u.p + 1} ~ X{v.opponent + 1}/p{v.p + 1}"
                 for u, v in self.matching]
        parts += [f"+win X{u.opponent + 1}/p{u.p + 1}" for u in self.extras_i]
        parts += [f"+loss X{v.opponent + 1}/p{v.p + 1}" for v in self.extras_j]
        return ", ".join(parts) or "(empty)"


def _perfect_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int] | None:
    """Kuhn's augmenting paths; ``match[row] = column`` for a perfect matching or None."""
    n_left = len(adj)
    if n_left != n_right:
        return None
    owner = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if owner[v] < 0 or augment(owner[v], seen):
                    owner[v] = u
                    return True
        return False

    for u in range(n_left):
        if not augment(u, [False] * n_right):
            return None
    match = [-1] * n_left
    for v, u in enumerate(owner):
        match[u] = v
    return match


def saturating_matching(
    n_left: int,
    n_right: int,
    edges: Sequence[tuple[int, int]],
    optional_left: Sequence[bool],
    optional_right: Sequence[bool],
) -> tuple[list[tuple[int, int]], list[int], list[int]] | None:
    """Matching that covers every non-optional vertex on both sides.

    Returns ``(pairs, unmatched_left, unmatched_right)`` or ``None``.  Each
    left vertex ``u`` gets a dummy column usable only if ``u`` is optional;
    each right vertex ``v`` gets a dummy row usable only if ``v`` is
    optional; dummy rows reach every dummy column.  A perfect matching of
    the padded graph exists exactly when a saturating matching does.
    """
    rows: list[list[int]] = [[] for _ in range(n_left + n_right)]
    for u, v in edges:
        rows[u].append(v)
    for u in range(n_left):
        if optional_left[u]:
            rows[u].append(n_right + u)
    dummy_cols = list(range(n_right, n_right + n_left))
    for v in range(n_right):
        r = rows[n_left + v]
        if optional_right[v]:
            r.append(v)
        r.extend(dummy_cols)
    match = _perfect_matching(rows, n_left + n_right)
    if match is None:
        return None
    pairs = [(u, match[u]) for u in range(n_left) if match[u] < n_right]
    matched_right = {v for _, v in pairs}
    return (
        pairs,
        [u for u in range(n_left) if match[u] >= n_right],
        [v for v in range(n_right) if v not in matched_right],
    )


@dataclass(frozen=True)
class _Confrontation:
    left: list[SideOutcome]
    right: list[SideOutcome]
    edges: dict[tuple[int, int], Relation]
    optional_left: list[bool]
    optional_right: list[bool]

    def solve(self, drop_left=(), drop_right=(), forced=None):
        keep_l = [u for u in range(len(self.left)) if u not in drop_left]
        keep_r = [v for v in range(len(self.right)) if v not in drop_right]
        if forced is not None:
            keep_l.remove(forced[0])
            keep_r.remove(forced[1])
        pos_l = {u: k for k, u in enumerate(keep_l)}
        pos_r = {v: k for k, v in enumerate(keep_r)}
        edges = [(pos_l[u], pos_r[v]) for (u, v) in self.edges if u in pos_l and v in pos_r]
        found = saturating_matching(
            len(keep_l), len(keep_r), edges,
            [self.optional_left[u] for u in keep_l],
            [self.optional_right[v] for v in keep_r],
        )
        if found is None:
            return None
        pairs, free_l, free_r = found
        pairs = [(keep_l[a], keep_r[b]) for a, b in pairs]
        if forced is not None:
            pairs.append(forced)
        extras_l = sorted([keep_l[a] for a in free_l] + list(drop_left))
        extras_r = sorted([keep_r[b] for b in free_r] + list(drop_right))
        return sorted(pairs), extras_l, extras_r

    def witness(self, found, strict: bool) -> ConfrontationWitness:
        pairs, el, er = found
        return ConfrontationWitness(
            tuple((self.left[u], self.right[v]) for u, v in pairs),
            tuple(self.left[u] for u in el),
            tuple(self.right[v] for v in er),
            strict,
        )

    def decide(self) -> ConfrontationWitness | None:
        base = self.solve()
        if base is None:
            return None
        # strict witnesses: an extra outcome, or a stronger pair forced into the matching
        for u, opt in enumerate(self.optional_left):
            if opt:
                found = self.solve(drop_left=(u,))
                if found is not None:
                    return self.witness(found, True)
        for v, opt in enumerate(self.optional_right):
            if opt:
                found = self.solve(drop_right=(v,))
                if found is not None:
                    return self.witness(found, True)
        for (u, v), rel in sorted(self.edges.items()):
            if rel is Relation.STRONGER:
                found = self.solve(forced=(u, v))
                if found is not None:
                    return self.witness(found, True)
        return self.witness(base, False)


def _sides(array, i, j, include_direct):
    left = outcomes_of(array, i)
    right = outcomes_of(array, j)
    if not include_direct:
        left = [o for o in left if o.opponent != j]
        right = [o for o in right if o.opponent != i]
    return left, right


def _confrontation(array, order, i, j, monotone, include_direct, allow_self_match):
    if i == j:
        raise BadParameter("confrontation needs two distinct alternatives")
    left, right = _sides(array, i, j, include_direct)
    edges = {}
    for a, u in enumerate(left):
        for b, v in enumerate(right):
            if not allow_self_match and u.key == v.key:
                continue
            rel = compare_outcomes(u, v, order)
            if rel is not Relation.INCOMPARABLE:
                edges[a, b] = rel
    if monotone:
        opt_l = [array.is_maximal_win(u.score, u.conceded) for u in left]
        opt_r = [array.is_maximal_loss(v.score, v.conceded) for v in right]
    else:
        opt_l, opt_r = [False] * len(left), [False] * len(right)
    return _Confrontation(left, right, edges, opt_l, opt_r)


def sc_premise(array: ComparisonArray, order: WeakOrder, i: int, j: int, *,
               include_direct: bool = True, allow_self_match: bool = True
               ) -> ConfrontationWitness | None:
    """One-to-one not-weaker correspondence from the outcomes of ``X_i`` to those of ``X_j``."""
    return _confrontation(array, order, i, j, False, include_direct, allow_self_match).decide()


def scm_premise(array: ComparisonArray, order: WeakOrder, i: int, j: int, *,
                include_direct: bool = True, allow_self_match: bool = True
                ) -> ConfrontationWitness | None:
    """Like :func:`sc_premise`, with extra maximal wins of ``X_i`` and maximal losses of ``X_j``."""
    return _confrontation(array, order, i, j, True, include_direct, allow_self_match).decide()


@dataclass(frozen=True)
class PairVerdict:
    i: int
    j: int
    premise: str
    witness: ConfrontationWitness | None
    violation: bool


@dataclass(frozen=True)
class AuditReport:
    order: WeakOrder
    axiom: Axiom
    pairs: tuple[PairVerdict, ...]
    direct_flips: tuple[tuple[int, int], ...] = ()

    @property
    def violations(self) -> list[PairVerdict]:
        return [p for p in self.pairs if p.violation]

    @property
    def ok(self) -> bool:
        return not any(p.violation for p in self.pairs)

    def verdict(self, i: int, j: int) -> PairVerdict:
        for p in self.pairs:
            if (p.i, p.j) == (i, j):
                return p
        raise KeyError((i, j))


def _pair_verdict(array, order, i, j, axiom, include_direct, allow_self_match) -> PairVerdict:
    decide = sc_premise if axiom is Axiom.SC else scm_premise
    w = decide(array, order, i, j, include_direct=include_direct,
               allow_self_match=allow_self_match)
    if w is None:
        return PairVerdict(i, j, "none", None, False)
    label = f"{axiom.value}_{'strict' if w.strict else 'weak'}"
    violation = not order.prefers(i, j) if w.strict else order.prefers(j, i)
    return PairVerdict(i, j, label, w, violation)


def audit_order(array: ComparisonArray, order: WeakOrder, axiom: Axiom | str = Axiom.SCM, *,
                include_direct: bool = True, allow_self_match: bool = True,
                check_direct: bool = False) -> AuditReport:
    """Confront every ordered pair and flag conclusions the order contradicts.

    With ``check_direct`` the audit is repeated without the outcomes between
    the two confronted alternatives and the pairs whose violation flag
    changes are listed in ``direct_flips``.
    """
    axiom = Axiom(axiom)
    if order.n != array.n:
        raise BadParameter(f"order ranks {order.n} alternatives, array has {array.n}")
    pairs = tuple(
        _pair_verdict(array, order, i, j, axiom, include_direct, allow_self_match)
        for i in range(array.n) for j in range(array.n) if i != j
    )
    flips = ()
    if check_direct:
        flips = tuple(
            (p.i, p.j) for p in pairs
            if _pair_verdict(array, order, p.i, p.j, axiom, not include_direct,
                             allow_self_match).violation != p.violation
        )
    return AuditReport(order, axiom, pairs, flips)


@dataclass(frozen=True)
class OperatorAudit:
    """Audits of every optimal order of one method on one array.

    Passing shows only that this array does not refute the axiom for the
    method; failing is a refutation.
    """

    optimal: OptimalSet
    reports: tuple[AuditReport, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def failing(self) -> list[AuditReport]:
        return [r for r in self.reports if not r.ok]


def audit_operator(spec: MethodSpec, array: ComparisonArray, axiom: Axiom | str = Axiom.SCM,
                   *, cap: int | None = None, jobs: int = 1, **audit_kw) -> OperatorAudit:
    opt = optimize(spec, array, cap=cap, jobs=jobs)
    return OperatorAudit(opt, tuple(audit_order(array, o, axiom, **audit_kw) for o in opt.orders))


def sign_pattern(array: ComparisonArray, order: WeakOrder) -> tuple[int, ...]:
    """``sign(rho_i - rho_j)`` over compared pairs ``i < j``."""
    rho = order.rho
    pairs = sorted({(o.i, o.j) for o in array.outcomes})
    return tuple((rho[i] > rho[j]) - (rho[i] < rho[j]) for i, j in pairs)


def same_sign_pattern(array: ComparisonArray, rho: WeakOrder, rho2: WeakOrder) -> bool:
    return sign_pattern(array, rho) == sign_pattern(array, rho2)


@dataclass(frozen=True)
class IndifferenceResult:
    indifferent: bool
    counterexample: tuple[WeakOrder, WeakOrder] | None = None

    def __bool__(self) -> bool:
        return self.indifferent


def indifference_check(spec: MethodSpec, array: ComparisonArray, *,
                       cap: int | None = None) -> IndifferenceResult:
    """Whether orders with equal sign patterns are always optimal together.

    The search runs over all weak orders regardless of the method's domain.
    Returns an optimal order and a non-optimal one with the same pattern
    when the method is not indifferent on ``array``.
    """
    from dataclasses import replace

    wspec = replace(spec, domain="W")
    if spec.method == "grs":
        optimal = set(optimize(wspec, array).orders)
        orders = list(domain_orders(wspec, array.n, cap))
        score = {o: int(o in optimal) for o in orders}
        best = 1
    else:
        f, _ = kernel(wspec, array)
        orders = list(domain_orders(wspec, array.n, cap))
        score = {o: f(o.rho) for o in orders}
        best = max(score.values()) if wspec.sense == "maximize" else min(score.values())
    groups: dict[tuple, list[WeakOrder]] = defaultdict(list)
    for o in orders:
        groups[sign_pattern(array, o)].append(o)
    for members in groups.values():
        good = [o for o in members if score[o] == best]
        bad = [o for o in members if score[o] != best]
        if good and bad:
            return IndifferenceResult(False, (good[0], bad[0]))
    return IndifferenceResult(True)


def strictness_check(spec: MethodSpec, array: ComparisonArray, *, cap: int | None = None) -> bool:
    """True when every optimal order is linear."""
    return all(o.is_linear() for o in optimize(spec, array, cap=cap).orders)
