"""Structure functions C1..C6, their weak-order revisions C'1..C'6 and the
net-score transforms used by the "Net" objectives."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core import as_fraction
from .errors import BadParameter


def sign(z) -> int:
    return (z > 0) - (z < 0)


def pos(z):
    return z if z > 0 else 0 * z


def neg(z):
    return z if z < 0 else 0 * z


class Family(str, enum.Enum):
    C = "C"
    CPRIME = "Cprime"


@dataclass(frozen=True)
class StructureFunctionId:
    family: Family
    index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not 1 <= self.index <= 6:
            raise BadParameter(f"structure function index must be 1..6, got {self.index}")

    @classmethod
    def parse(cls, text: str) -> StructureFunctionId:
        """``"C3"``, ``"C'3"`` or ``"Cprime3"``."""
        t = text.strip()
        for prefix, fam in (("Cprime", Family.CPRIME), ("C'", Family.CPRIME), ("C", Family.C)):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(fam, int(t[len(prefix):]))
        raise BadParameter(f"unknown structure function {text!r}")

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __str__(self) -> str:
        return f"C{self.index}" if self.family is Family.C else f"C'{self.index}"


def C(k: int) -> StructureFunctionId:
    return StructureFunctionId(Family.C, k)


def Cp(k: int) -> StructureFunctionId:
    return StructureFunctionId(Family.CPRIME, k)


def evaluate(fid: StructureFunctionId, x: int, y: int) -> int:
    """Value of the structure function at a pair of Copeland indexes."""
    d = x - y
    k = fid.index
    if fid.family is Family.C or k in (1, 4):
        if k == 1:
            return sign(d)
        if k == 2:
            return pos(sign(d))
        if k == 3:
            return neg(sign(d))
        if k == 4:
            return d
        if k == 5:
            return pos(d)
        return neg(d)
    if k == 2:
        return sign(d) + 1
    if k == 3:
        return sign(d) - 1
    if k == 5:
        return pos(d + 1)
    return neg(d - 1)


class PsiKind(str, enum.Enum):
    PLUS = "plus"
    CROW = "crow"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class PsiVariant:
    """Transform applied to a net score ``r_ij - r_ji`` in the "Net" objectives.

    ``plus`` is ``z+``; ``crow`` pays half the value range for a net draw;
    ``shifted`` is ``(z + r_max - r_min)+``.
    """

    kind: PsiKind = PsiKind.PLUS
    r_min: Fraction = Fraction(-1)
    r_max: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PsiKind(self.kind))
        object.__setattr__(self, "r_min", as_fraction(self.r_min))
        object.__setattr__(self, "r_max", as_fraction(self.r_max))

    def __call__(self, z: Any) -> Fraction:
        return eval_psi(self, z)


def eval_psi(psi: PsiVariant, z: Any) -> Fraction:
    z = as_fraction(z)
    if psi.kind is PsiKind.PLUS:
        return pos(z)
    if psi.kind is PsiKind.CROW:
        if z > 0:
            return z
        if z == 0:
            return (psi.r_max - psi.r_min) / 2
        return Fraction(0)
    return pos(z + psi.r_max - psi.r_min)


def max_win_gain(fid: StructureFunctionId, r_min: Any, r_max: Any, d: int) -> Fraction:
    """Contribution of a maximal win to the QA objective when ``rho_i - rho_j = d``."""
    return as_fraction(r_max) * evaluate(fid, d, 0) + as_fraction(r_min) * evaluate(fid, 0, d)


def check_condition_10(
    fid: StructureFunctionId, r_min: Any, r_max: Any
) -> tuple[bool, tuple[Fraction, Fraction, Fraction]]:
    """Whether a maximal win is worth more the higher its winner is placed.

    Returns the verdict ``g(-1) < g(0) < g(1)`` and the triple ``(g(-1), g(0), g(1))``.
    """
    r_min, r_max = as_fraction(r_min), as_fraction(r_max)
    if not r_max > r_min:
        raise BadParameter("r_max must exceed r_min")
    g = tuple(max_win_gain(fid, r_min, r_max, d) for d in (-1, 0, 1))
    return g[0] < g[1] < g[2], g
