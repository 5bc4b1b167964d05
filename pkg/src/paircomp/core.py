"""Incomplete paired-comparison arrays, weak orders and Copeland indexes.

Alternatives are numbered ``0..n-1`` and individuals ``0..m-1`` inside the
package; the file format and the CLI use 1-based numbers.  All comparison
values are :class:`fractions.Fraction` so objective values compare exactly.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from .errors import (
    BadIndex,
    BoundViolation,
    CapExceeded,
    DataError,
    DuplicateEntry,
    SelfComparison,
    UnpairedEntry,
)

DEFAULT_CAP = 9
DEFAULT_LINEAR_CAP = 10


def as_fraction(value: Any) -> Fraction:
    """Coerce ints, ``"p/q"`` strings, Fractions and decimal floats exactly."""
    if isinstance(value, bool):
        raise DataError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DataError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DataError(f"not a rational number: {value!r}") from exc
    raise DataError(f"not a rational number: {value!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Outcome:
    """One comparison of alternatives ``i < j`` by individual ``p``."""

    p: int
    i: int
    j: int
    rij: Fraction
    rji: Fraction


@dataclass(frozen=True)
class SideOutcome:
    """An outcome seen from one participant: ``(score, conceded)`` against ``opponent``."""

    p: int
    owner: int
    opponent: int
    score: Fraction
    conceded: Fraction

    @property
    def key(self) -> tuple[int, int, int]:
        """Identifies the underlying comparison regardless of the side."""
        return (self.p, min(self.owner, self.opponent), max(self.owner, self.opponent))


@dataclass(frozen=True)
class ComparisonArray:
    """The array of incomplete paired-comparison matrices of ``m`` individuals."""

    n: int
    m: int
    r_min: Fraction
    r_max: Fraction
    outcomes: tuple[Outcome, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_min", as_fraction(self.r_min))
        object.__setattr__(self, "r_max", as_fraction(self.r_max))
        if self.n < 2:
            raise BadIndex(f"need at least 2 alternatives, got n={self.n}")
        if self.m < 1:
            raise BadIndex(f"need at least 1 individual, got m={self.m}")
        if not self.r_max > self.r_min:
            raise BoundViolation(f"r_max={self.r_max} must exceed r_min={self.r_min}")
        seen = set()
        normalized = []
        for o in self.outcomes:
            if not (0 <= o.p < self.m):
                raise BadIndex(f"individual {o.p + 1} outside 1..{self.m}")
            for a in (o.i, o.j):
                if not (0 <= a < self.n):
                    raise BadIndex(f"alternative {a + 1} outside 1..{self.n}")
            if o.i == o.j:
                raise SelfComparison(f"individual {o.p + 1} compares X{o.i + 1} with itself")
            if o.i > o.j:
                o = Outcome(o.p, o.j, o.i, o.rji, o.rij)
            o = Outcome(o.p, o.i, o.j, as_fraction(o.rij), as_fraction(o.rji))
            for v in (o.rij, o.rji):
                if not (self.r_min <= v <= self.r_max):
                    raise BoundViolation(
                        f"value {v} of individual {o.p + 1} on (X{o.i + 1}, X{o.j + 1}) "
                        f"outside [{self.r_min}, {self.r_max}]"
                    )
            if (o.p, o.i, o.j) in seen:
                raise DuplicateEntry(
                    f"individual {o.p + 1} compares X{o.i + 1} and X{o.j + 1} twice"
                )
            seen.add((o.p, o.i, o.j))
            normalized.append(o)
        object.__setattr__(self, "outcomes", tuple(sorted(normalized)))

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[tuple[int, int] | tuple[int, int, int]],
        *,
        m: int = 1,
        r_max: Any = 1,
        r_min: Any = None,
    ) -> ComparisonArray:
        """Build an array of maximal wins.

        Each arc is ``(i, j)`` or ``(p, i, j)`` with 1-based numbers and means
        that individual ``p`` (default 1) gives ``X_i`` a maximal win over ``X_j``.
        """
        r_max = as_fraction(r_max)
        r_min = -r_max if r_min is None else as_fraction(r_min)
        outs = []
        for arc in arcs:
            p, i, j = (1, *arc) if len(arc) == 2 else arc
            outs.append(Outcome(p - 1, i - 1, j - 1, r_max, r_min))
        return cls(n, m, r_min, r_max, tuple(outs))

    @cached_property
    def skew_symmetric(self) -> bool:
        return all(o.rji == -o.rij for o in self.outcomes)

    @cached_property
    def _lookup(self) -> dict[tuple[int, int, int], Fraction]:
        table = {}
        for o in self.outcomes:
            table[(o.p, o.i, o.j)] = o.rij
            table[(o.p, o.j, o.i)] = o.rji
        return table

    def value(self, p: int, i: int, j: int) -> Fraction | None:
        """``r_ij^p`` or ``None`` when undefined (diagonal entries are 0)."""
        if i == j:
            return Fraction(0)
        return self._lookup.get((p, i, j))

    def entries(self) -> Iterator[tuple[int, int, int, Fraction]]:
        """Every defined off-diagonal entry ``(p, i, j, r_ij^p)``, both directions."""
        for o in self.outcomes:
            yield o.p, o.i, o.j, o.rij
            yield o.p, o.j, o.i, o.rji

    def is_complete(self) -> bool:
        return len(self.outcomes) == self.m * self.n * (self.n - 1) // 2

    def is_maximal_win(self, score: Fraction, conceded: Fraction) -> bool:
        return score == self.r_max and conceded == self.r_min

    def is_maximal_loss(self, score: Fraction, conceded: Fraction) -> bool:
        return score == self.r_min and conceded == self.r_max

    def concat(self, other: ComparisonArray) -> ComparisonArray:
        """Stack the individuals of ``other`` after ours (same alternatives and bounds)."""
        if (self.n, self.r_min, self.r_max) != (other.n, other.r_min, other.r_max):
            raise DataError("arrays differ in n or bounds")
        shifted = tuple(
            Outcome(o.p + self.m, o.i, o.j, o.rij, o.rji) for o in other.outcomes
        )
        return ComparisonArray(self.n, self.m + other.m, self.r_min, self.r_max,
                               self.outcomes + shifted)

    def with_bounds(self, r_min: Any, r_max: Any) -> ComparisonArray:
        return ComparisonArray(self.n, self.m, r_min, r_max, self.outcomes)


def validate(raw: Mapping[str, Any]) -> ComparisonArray:
    """Build a :class:`ComparisonArray` from a plain description.

    ``raw`` has keys ``n``, ``m``, ``r_min``, ``r_max`` and ``comparisons``, a
    list of records ``{"p", "i", "j", "rij", "rji"}`` with 1-based numbers.  A
    record may omit ``rji`` if the reverse record ``(p, j, i)`` supplies it.
    """
    try:
        n = int(raw["n"])
        m = int(raw.get("m", 1))
        r_min = as_fraction(raw["r_min"])
        r_max = as_fraction(raw["r_max"])
    except KeyError as exc:
        raise DataError(f"missing key {exc.args[0]!r}") from None
    halves: dict[tuple[int, int, int], Fraction] = {}
    full: list[Outcome] = []
    for k, rec in enumerate(raw.get("comparisons", ())):
        try:
            p, i, j = int(rec["p"]), int(rec["i"]), int(rec["j"])
            rij = as_fraction(rec["rij"])
        except KeyError as exc:
            raise DataError(f"comparison #{k + 1}: missing key {exc.args[0]!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise BadIndex(f"comparison #{k + 1}: alternative outside 1..{n}")
        if not (1 <= p <= m):
            raise BadIndex(f"comparison #{k + 1}: individual outside 1..{m}")
        if i == j:
            raise SelfComparison(f"comparison #{k + 1}: X{i} compared with itself")
        if rec.get("rji") is not None:
            full.append(Outcome(p - 1, i - 1, j - 1, rij, as_fraction(rec["rji"])))
        else:
            if (p, i, j) in halves:
                raise DuplicateEntry(f"comparison #{k + 1}: r_{i}{j} of individual {p} repeated")
            halves[(p, i, j)] = rij
    for (p, i, j), rij in list(halves.items()):
        if (p, i, j) not in halves:
            continue
        if (p, j, i) not in halves:
            raise UnpairedEntry(
                f"r_{i},{j} of individual {p} is defined but r_{j},{i} is not"
            )
        rji = halves.pop((p, j, i))
        del halves[(p, i, j)]
        full.append(Outcome(p - 1, i - 1, j - 1, rij, rji))
    return ComparisonArray(n, m, r_min, r_max, tuple(full))


@dataclass(frozen=True)
class AggregateMatrix:
    """Sums ``r_ij`` over individuals and comparison counts ``m_ij``."""

    r: tuple[tuple[Fraction, ...], ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.r)


def aggregate(array: ComparisonArray) -> AggregateMatrix:
    n = array.n
    r = [[Fraction(0)] * n for _ in range(n)]
    c = [[0] * n for _ in range(n)]
    for o in array.outcomes:
        r[o.i][o.j] += o.rij
        r[o.j][o.i] += o.rji
        c[o.i][o.j] += 1
        c[o.j][o.i] += 1
    return AggregateMatrix(tuple(map(tuple, r)), tuple(map(tuple, c)))


def copeland_in_array(array: ComparisonArray) -> tuple[Fraction, ...]:
    """``t_i``: sum of ``r_ij - r_ji`` over every comparison of ``X_i``."""
    t = [Fraction(0)] * array.n
    for o in array.outcomes:
        d = o.rij - o.rji
        t[o.i] += d
        t[o.j] -= d
    return tuple(t)


def outcomes_of(array: ComparisonArray, i: int) -> list[SideOutcome]:
    """All outcomes of ``X_i`` (0-based), ordered by individual then opponent."""
    if not (0 <= i < array.n):
        raise BadIndex(f"alternative {i + 1} outside 1..{array.n}")
    found = []
    for o in array.outcomes:
        if o.i == i:
            found.append(SideOutcome(o.p, i, o.j, o.rij, o.rji))
        elif o.j == i:
            found.append(SideOutcome(o.p, i, o.i, o.rji, o.rij))
    found.sort(key=lambda s: (s.p, s.opponent))
    return found


@dataclass(frozen=True)
class WeakOrder:
    """An ordered partition of ``0..n-1``; ``blocks[0]`` is the best block."""

    blocks: tuple[tuple[int, ...], ...]
    rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise BadIndex("weak order has an empty block")
        members = sorted(itertools.chain.from_iterable(blocks))
        if members != list(range(len(members))) or not members:
            raise BadIndex("blocks must partition 0..n-1")
        rank = [0] * len(members)
        for level, b in enumerate(blocks):
            for a in b:
                rank[a] = level
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def from_ranks(cls, rank: Sequence[int]) -> WeakOrder:
        """From a vector of block levels (smaller level = better); levels may skip."""
        levels = sorted(set(rank))
        return cls(tuple(tuple(a for a, r in enumerate(rank) if r == lv) for lv in levels))

    @classmethod
    def from_scores(cls, scores: Sequence[Any]) -> WeakOrder:
        """Equal scores tie; a larger score ranks higher."""
        return cls.from_ranks([-s for s in scores])

    @classmethod
    def linear(cls, sequence: Sequence[int]) -> WeakOrder:
        return cls(tuple((a,) for a in sequence))

    @property
    def n(self) -> int:
        return len(self.rank)

    @cached_property
    def rho(self) -> tuple[int, ...]:
        """Copeland indexes: alternatives strictly below minus strictly above."""
        n = self.n
        out = [0] * n
        above = 0
        for b in self.blocks:
            below = n - above - len(b)
            for a in b:
                out[a] = below - above
            above += len(b)
        return tuple(out)

    def is_linear(self) -> bool:
        return len(self.blocks) == self.n

    def prefers(self, i: int, j: int) -> bool:
        """``X_i`` strictly above ``X_j``."""
        return self.rank[i] < self.rank[j]

    def tied(self, i: int, j: int) -> bool:
        return self.rank[i] == self.rank[j]

    def weakly_prefers(self, i: int, j: int) -> bool:
        return self.rank[i] <= self.rank[j]

    def swap(self, i: int, j: int) -> WeakOrder:
        """Interchange the positions of ``X_i`` and ``X_j``."""
        rank = list(self.rank)
        rank[i], rank[j] = rank[j], rank[i]
        return WeakOrder.from_ranks(rank)

    def sort_key(self) -> tuple:
        """Position in the canonical enumeration sequence."""
        return (len(self.blocks), self.rank)

    def __str__(self) -> str:
        return " > ".join("[" + " ".join(f"X{a + 1}" for a in b) + "]" for b in self.blocks)


def parse_order(text: str, n: int | None = None) -> WeakOrder:
    """Parse ``"[X1] > [X2 X3] > [X4]"`` (brackets optional for singletons)."""
    blocks = []
    for part in text.split(">"):
        part = part.strip().strip("[]").replace(",", " ")
        names = part.split()
        if not names:
            raise DataError(f"empty block in order {text!r}")
        block = []
        for name in names:
            digits = name[1:] if name[:1] in "Xx" else name
            if not digits.isdigit():
                raise DataError(f"bad alternative name {name!r} in order {text!r}")
            block.append(int(digits) - 1)
        blocks.append(tuple(block))
    order = WeakOrder(tuple(blocks))
    if n is not None and order.n != n:
        raise BadIndex(f"order {text!r} ranks {order.n} alternatives, expected {n}")
    return order


def copeland_in_order(order: WeakOrder, i: int) -> int:
    if not (0 <= i < order.n):
        raise BadIndex(f"alternative {i + 1} outside 1..{order.n}")
    return order.rho[i]


def _surjections(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Maps ``0..n-1 -> 0..k-1`` hitting every value, in lexicographic order."""
    word = [0] * n
    counts = [0] * k

    def rec(pos: int, missing: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(word)
            return
        left = n - pos
        for v in range(k):
            fresh = counts[v] == 0
            if left - 1 < missing - fresh:
                continue
            word[pos] = v
            counts[v] += 1
            yield from rec(pos + 1, missing - fresh)
            counts[v] -= 1

    yield from rec(0, k)


def _check_n(n: int, cap: int | None) -> None:
    if n < 2:
        raise BadIndex(f"need at least 2 alternatives, got n={n}")
    if cap is not None and n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap}")


def enumerate_weak_orders(n: int, cap: int | None = DEFAULT_CAP) -> Iterator[WeakOrder]:
    """All weak orders on ``n`` alternatives in canonical sequence.

    The sequence runs over the number of blocks ``k = 1..n``; for each ``k``
    the block-level vectors are listed lexicographically.
    """
    _check_n(n, cap)
    for k in range(1, n + 1):
        for word in _surjections(n, k):
            yield WeakOrder.from_ranks(word)


def enumerate_linear_orders(n: int, cap: int | None = DEFAULT_LINEAR_CAP) -> Iterator[WeakOrder]:
    """All ``n!`` linear orders, in the lexicographic order of their rank vectors."""
    _check_n(n, cap)
    for word in itertools.permutations(range(n)):
        yield WeakOrder.from_ranks(word)


def ordered_bell(n: int) -> int:
    """Number of weak orders on ``n`` labelled alternatives."""
    a = [1]
    for k in range(1, n + 1):
        a.append(sum(math.comb(k, j) * a[k - j] for j in range(1, k + 1)))
    return a[n]


def squared_norm_linear(n: int) -> int:
    """``sum rho_i^2`` of any linear order: ``(n-1) n (n+1) / 3``."""
    return (n - 1) * n * (n + 1) // 3
