from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from paircomp.errors import BadParameter
from paircomp.structfun import (
    C,
    Cp,
    PsiKind,
    PsiVariant,
    StructureFunctionId,
    check_condition_10,
    eval_psi,
    evaluate,
    sign,
)

GRID = [(x, y) for x in range(-10, 11) for y in range(-10, 11)]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_values_from_definitions():
    assert evaluate(C(4), 3, 1) == 2
    assert evaluate(C(5), 1, 3) == 0
    assert evaluate(C(6), 1, 3) == -2
    assert evaluate(Cp(3), 1, 1) == -1
    assert evaluate(Cp(5), -2, 1) == 0
    assert evaluate(Cp(6), 2, 1) == 0


def test_decomposition_identities():
    for x, y in GRID:
        assert C(1)(x, y) == C(2)(x, y) + C(3)(x, y)
        assert C(4)(x, y) == C(5)(x, y) + C(6)(x, y)
        assert C(2)(x, y) == sign(C(5)(x, y))
        assert C(3)(x, y) == sign(C(6)(x, y))


def test_revisions():
    for x, y in GRID:
        d = x - y
        assert Cp(1)(x, y) == C(1)(x, y)
        assert Cp(4)(x, y) == C(4)(x, y)
        assert Cp(2)(x, y) == sign(d) + 1
        assert Cp(3)(x, y) == sign(d) - 1
        assert Cp(5)(x, y) == max(d + 1, 0)
        assert Cp(6)(x, y) == min(d - 1, 0)
        if d > 0:
            assert Cp(2)(x, y) == 2 * C(2)(x, y) and Cp(3)(x, y) == C(3)(x, y)
        if d < 0:
            assert Cp(2)(x, y) == C(2)(x, y) and Cp(3)(x, y) == 2 * C(3)(x, y)


def test_parse_ids():
    assert StructureFunctionId.parse("C'3") == Cp(3)
    assert StructureFunctionId.parse("C5") == C(5)
    with pytest.raises(BadParameter):
        StructureFunctionId.parse("C7")


def test_psi_examples():
    crow01 = PsiVariant(PsiKind.CROW, 0, 1)
    assert eval_psi(crow01, 0) == Fraction(1, 2)
    crow = PsiVariant(PsiKind.CROW, -1, 1)
    assert crow(-3) == 0 and crow(3) == 3
    assert PsiVariant(PsiKind.SHIFTED, -1, 1)(0) == 2
    assert PsiVariant(PsiKind.PLUS)(Fraction(-1, 3)) == 0


def test_condition_10_examples():
    assert check_condition_10(C(2), 0, 1)[0] is False
    assert check_condition_10(C(2), -1, 1)[0] is True
    assert check_condition_10(Cp(2), 0, 1)[0] is True
    ok, g = check_condition_10(C(4), 0, 1)
    assert ok and g == (-1, 0, 1)


@given(rationals, rationals)
def test_condition_10_for_every_revision(a, b):
    assume(a != b)
    r_min, r_max = min(a, b), max(a, b)
    for k in range(1, 7):
        assert check_condition_10(Cp(k), r_min, r_max)[0]
    # the unrevised C2 and C3 need the bounds to straddle zero
    assert check_condition_10(C(2), r_min, r_max)[0] == (r_max > 0 > r_min)


def test_condition_10_rejects_bad_bounds():
    with pytest.raises(BadParameter):
        check_condition_10(C(1), 1, 1)
