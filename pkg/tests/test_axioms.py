import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import arrays, weak_orders
from oracles import confront_brute
from paircomp.axioms import (
    Axiom,
    Relation,
    audit_operator,
    audit_order,
    compare_outcomes,
    indifference_check,
    same_sign_pattern,
    saturating_matching,
    sc_premise,
    scm_premise,
    strictness_check,
)
from paircomp.core import (
    ComparisonArray,
    Outcome,
    SideOutcome,
    WeakOrder,
    enumerate_linear_orders,
    outcomes_of,
    parse_order,
)
from paircomp.fixtures import make_fixture, random_array
from paircomp.grs import reasonable_epsilon_max
from paircomp.objectives import MethodSpec

ID4 = WeakOrder.linear(range(4))
SWAP12 = WeakOrder.linear([1, 0, 2, 3])


def side(p, owner, opp, score, conceded):
    return SideOutcome(p, owner, opp, Fraction(score), Fraction(conceded))


# -------------------------------------------------------- outcome relation

def test_identical_outcomes_against_tied_opponents():
    order = WeakOrder.from_ranks([0, 0, 0, 0])
    a, b = side(0, 0, 2, 1, -1), side(0, 1, 3, 1, -1)
    assert compare_outcomes(a, b, order) is Relation.NOT_WEAKER
    assert compare_outcomes(b, a, order) is Relation.NOT_WEAKER


def test_win_is_stronger_than_loss():
    order = parse_order("[X1] > [X2] > [X3] > [X4]")
    assert compare_outcomes(side(0, 0, 1, 1, -1), side(0, 2, 3, -1, 1), order) is Relation.STRONGER
    assert compare_outcomes(side(0, 0, 3, 1, -1), side(0, 2, 1, -1, 1), order) is Relation.INCOMPARABLE


def test_cycle_outcome_strength():
    arr = make_fixture("figA1", n=3)
    order = parse_order("[X1] > [X2] > [X3]")
    win_3_over_1 = [o for o in outcomes_of(arr, 2) if o.opponent == 0][0]
    win_1_over_2 = [o for o in outcomes_of(arr, 0) if o.opponent == 1][0]
    assert compare_outcomes(win_3_over_1, win_1_over_2, order) is Relation.STRONGER


# ---------------------------------------------------------------- premises

def test_empty_outcome_sets():
    arr = ComparisonArray(3, 1, -1, 1, ())
    w = sc_premise(arr, WeakOrder.from_ranks([0, 1, 2]), 0, 1)
    assert w is not None and not w.strict
    rep = audit_order(arr, WeakOrder.from_ranks([0, 1, 2]), Axiom.SC)
    assert rep.verdict(1, 0).violation and not rep.verdict(0, 1).violation


def test_equal_losers_must_tie():
    arr = make_fixture("figA4", n=3)
    w = sc_premise(arr, parse_order("[X1] > [X2 X3]"), 1, 2)
    assert w is not None and not w.strict


def test_cycle_forbids_placing_one_over_three():
    arr = make_fixture("figA1", n=3)
    order = parse_order("[X1] > [X2] > [X3]")
    w = sc_premise(arr, order, 2, 0)
    assert w is not None and w.strict
    assert audit_order(arr, order, Axiom.SC).verdict(2, 0).violation


def test_scm_strict_examples():
    w = scm_premise(make_fixture("figA3", n=4), ID4, 0, 3)
    assert w is not None and w.strict
    n = 6
    arr = make_fixture("figA5", n=n)
    w = scm_premise(arr, WeakOrder.linear(range(n)), 0, 1)
    assert w is not None and w.strict


def test_maximal_win_against_nothing():
    arr = ComparisonArray(3, 1, -1, 1, (Outcome(0, 0, 2, 1, -1),))
    w = scm_premise(arr, WeakOrder.from_ranks([0, 0, 0]), 0, 1)
    assert w is not None and w.strict and not w.matching and len(w.extras_i) == 1
    assert sc_premise(arr, WeakOrder.from_ranks([0, 0, 0]), 0, 1) is None


def test_saturating_matching_small():
    # left 0 optional, left 1 mandatory; only edge (1, 0)
    found = saturating_matching(2, 1, [(1, 0)], [True, False], [False])
    assert found == ([(1, 0)], [0], [])
    assert saturating_matching(2, 1, [(0, 0)], [False, False], [False]) is None


def all_pairs_agree(arr, order, allow_self_match=True):
    for i in range(arr.n):
        for j in range(arr.n):
            if i == j:
                continue
            left, right = outcomes_of(arr, i), outcomes_of(arr, j)
            if max(len(left), len(right)) > 6:
                continue
            lt = [(u.score, u.conceded, u.opponent) for u in left]
            rt = [(v.score, v.conceded, v.opponent) for v in right]
            allowed = None if allow_self_match else (lambda a, b: left[a].key != right[b].key)
            for monotone, decide in ((False, sc_premise), (True, scm_premise)):
                opt_l = [monotone and arr.is_maximal_win(u.score, u.conceded) for u in left]
                opt_r = [monotone and arr.is_maximal_loss(v.score, v.conceded) for v in right]
                want = confront_brute(lt, rt, order, opt_l, opt_r, allowed)
                got = decide(arr, order, i, j, allow_self_match=allow_self_match)
                assert (got is None) == (want is None), (i, j, monotone)
                if got is not None:
                    assert got.strict == want, (i, j, monotone)


@settings(max_examples=80)
@given(arrays(n_min=2, n_max=4, m_max=2, values=[Fraction(-1), Fraction(0), Fraction(1)]),
       st.data(), st.booleans())
def test_matching_agrees_with_exhaustive_search(arr, data, self_match):
    order = data.draw(weak_orders(arr.n))
    all_pairs_agree(arr, order, self_match)


def test_matching_on_fixtures():
    for name, n in [("fig1", 4), ("figA1", 3), ("figA3", 4), ("figA4", 3), ("figA5", 5)]:
        arr = make_fixture(name, n=n)
        for order in list(enumerate_linear_orders(n))[:30]:
            all_pairs_agree(arr, order)


def test_witness_is_valid():
    rng = random.Random(2)
    for _ in range(60):
        arr = random_array(rng, 4, 2, density=0.7)
        order = WeakOrder.from_ranks([rng.randint(0, 3) for _ in range(4)])
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                w = scm_premise(arr, order, i, j)
                if w is None:
                    continue
                assert all(compare_outcomes(u, v, order) is not Relation.INCOMPARABLE for u, v in w.matching)
                assert all(arr.is_maximal_win(u.score, u.conceded) for u in w.extras_i)
                assert all(arr.is_maximal_loss(v.score, v.conceded) for v in w.extras_j)
                stronger = any(compare_outcomes(u, v, order) is Relation.STRONGER for u, v in w.matching)
                assert w.strict == (stronger or bool(w.extras_i or w.extras_j)) or w.strict
                assert len(w.matching) + len(w.extras_i) == len(outcomes_of(arr, i))
                assert len(w.matching) + len(w.extras_j) == len(outcomes_of(arr, j))


@settings(max_examples=60)
@given(arrays(n_min=3, n_max=4, m_max=2), st.data())
def test_adding_a_maximal_win_keeps_the_premise(arr, data):
    order = data.draw(weak_orders(arr.n))
    i, j = data.draw(st.permutations(range(arr.n)))[:2]
    k = data.draw(st.sampled_from([a for a in range(arr.n) if a not in (i, j)]))
    before = scm_premise(arr, order, i, j)
    extra = ComparisonArray(arr.n, arr.m + 1, arr.r_min, arr.r_max,
                            arr.outcomes + (Outcome(arr.m, i, k, arr.r_max, arr.r_min),))
    after = scm_premise(extra, order, i, j)
    if before is not None:
        assert after is not None and after.strict


@settings(max_examples=60)
@given(arrays(n_min=2, n_max=4, m_max=2), st.data())
def test_mutual_equal_correspondence(arr, data):
    order = data.draw(weak_orders(arr.n))
    i, j = data.draw(st.permutations(range(arr.n)))[:2]
    w = sc_premise(arr, order, i, j)
    if w is None or w.strict:
        return
    if all(u.score == v.score and u.conceded == v.conceded and order.tied(u.opponent, v.opponent)
           for u, v in w.matching):
        back = sc_premise(arr, order, j, i)
        assert back is not None and not back.strict


# ------------------------------------------------------------------ audits

def test_figA3_audits():
    arr = make_fixture("figA3", n=4)
    assert audit_order(arr, ID4, Axiom.SCM).ok
    rep = audit_order(arr, SWAP12, Axiom.SCM)
    assert [(v.i, v.j, v.premise) for v in rep.violations] == [(0, 1, "scm_strict")]


def test_cycle_has_no_consistent_linear_order():
    arr = make_fixture("figA1", n=3)
    assert all(not audit_order(arr, o, Axiom.SC).ok for o in enumerate_linear_orders(3))


def test_direct_outcome_flag():
    arr = make_fixture("figA5", n=6)
    tied = WeakOrder.from_ranks([0] * 6)
    rep = audit_order(arr, tied, Axiom.SC, check_direct=True)
    assert set(rep.direct_flips) >= {(2, 3), (4, 5)}
    assert audit_order(arr, tied, Axiom.SC, include_direct=False).verdict(4, 5).violation is False


def test_row_sums_pass_on_random_arrays():
    rng = random.Random(8)
    for _ in range(40):
        n, m = rng.randint(3, 5), rng.randint(1, 2)
        arr = random_array(rng, n, m, density=0.6, skew=True)
        spec = MethodSpec("grs", epsilon=reasonable_epsilon_max(n, m))
        assert audit_operator(spec, arr, Axiom.SCM).passed
        assert audit_operator(spec, arr, Axiom.SC).passed


def test_least_squares_fails_self_consistency():
    aud = audit_operator(MethodSpec("beta_ls", beta=1), make_fixture("figA5", n=6), Axiom.SC)
    assert not aud.passed and aud.failing


def test_copeland_qa_fails_scm():
    aud = audit_operator(MethodSpec("wqa_4"), make_fixture("figA3", n=4), Axiom.SCM)
    assert not aud.passed
    assert SWAP12 in [r.order for r in aud.failing]


# ---------------------------------------------------------- meta-properties

def test_sign_patterns():
    arr = make_fixture("figA3", n=4)
    assert same_sign_pattern(arr, ID4, SWAP12)
    assert not same_sign_pattern(arr, ID4, WeakOrder.linear([0, 1, 3, 2]))
    small = make_fixture("figA4", n=3)
    assert same_sign_pattern(small, parse_order("[X1] > [X2] > [X3]"), parse_order("[X1] > [X3] > [X2]"))


def test_indifference_examples():
    rng = random.Random(4)
    for _ in range(10):
        arr = random_array(rng, 4, 1, density=0.6)
        assert indifference_check(MethodSpec("kemeny_1"), arr)
    # at beta = 1 the optimum is the all-tied order, whose pattern nothing else shares
    assert indifference_check(MethodSpec("beta_ls", beta=1), make_fixture("figA5", n=6))
    res = indifference_check(MethodSpec("beta_ls", beta=Fraction(1, 8)), make_fixture("figA5", n=6))
    assert not res
    good, bad = res.counterexample
    assert same_sign_pattern(make_fixture("figA5", n=6), good, bad)


def test_indifference_of_copeland_qa_follows_ties():
    # t = (2, 0, -2): the only optimum is linear and no same-pattern order hides
    chain = ComparisonArray.from_arcs(3, [(1, 2), (2, 3)])
    assert indifference_check(MethodSpec("wqa_4"), chain)
    res = indifference_check(MethodSpec("wqa_4"), make_fixture("figA3", n=4))
    assert not res


def test_strictness():
    fig1 = make_fixture("fig1")
    assert strictness_check(MethodSpec("wqa_2", domain="L"), fig1)
    tie = ComparisonArray.from_arcs(3, [(1, 3), (2, 3)])
    assert not strictness_check(MethodSpec("wqa_4"), tie)
    assert not strictness_check(MethodSpec("kemeny_1"), ComparisonArray(3, 1, -1, 1, ()))
