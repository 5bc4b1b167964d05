"""Named example arrays and seeded random arrays."""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core import ComparisonArray, Outcome, as_fraction
from .errors import BadParameter

# (minimum n, minimum m) per construction
MINIMA = {
    "fig1": (4, 2),
    "figA1": (3, 1),
    "figA2": (2, 2),
    "figA3": (4, 1),
    "figA4": (3, 1),
    "figA5": (5, 1),
}


@dataclass(frozen=True)
class Fixture:
    name: str
    n: int | None = None
    m: int | None = None
    r_max: Fraction = Fraction(1)
    r_min: Fraction | None = None

    def __post_init__(self) -> None:
        if self.name not in MINIMA:
            raise BadParameter(f"unknown fixture {self.name!r}; choose from {sorted(MINIMA)}")
        n_min, m_min = MINIMA[self.name]
        n = n_min if self.n is None else self.n
        m = m_min if self.m is None else self.m
        if n < n_min:
            raise BadParameter(f"{self.name} needs n >= {n_min}, got {n}")
        if m < m_min:
            raise BadParameter(f"{self.name} needs m >= {m_min}, got {m}")
        r_max = as_fraction(self.r_max)
        r_min = -r_max if self.r_min is None else as_fraction(self.r_min)
        if not r_max > r_min:
            raise BadParameter("r_max must exceed r_min")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r_max", r_max)
        object.__setattr__(self, "r_min", r_min)

    def arcs(self) -> list[tuple[int, int, int]]:
        """Maximal wins ``(p, winner, loser)``, 1-based."""
        n = self.n
        if self.name == "fig1":
            return [(1, 2, 4), (1, 3, 4), (2, 1, 3)]
        if self.name == "figA1":
            return [(1, 1, 2), (1, 2, 3), (1, 3, 1)]
        if self.name == "figA2":
            return [(1, 1, 2), (2, 2, 1)]
        if self.name == "figA3":
            return [(1, 1, 3), (1, 3, 4), (1, 2, 4)]
        if self.name == "figA4":
            return [(1, 1, 2), (1, 1, 3)]
        skipped = {(1, 2), (1, 4), (2, 3)}
        return [(1, k, l) for k in range(1, n + 1) for l in range(k + 1, n + 1)
                if (k, l) not in skipped]


def make_fixture(fixture: Fixture | str, **params: Any) -> ComparisonArray:
    """Array of a named construction; extra individuals and alternatives stay uncompared."""
    if isinstance(fixture, str):
        fixture = Fixture(fixture, **params)
    return ComparisonArray.from_arcs(fixture.n, fixture.arcs(), m=fixture.m,
                                     r_max=fixture.r_max, r_min=fixture.r_min)


def all_fixture_arrays(max_n: int = 7) -> list[tuple[str, ComparisonArray]]:
    """Every construction at each admissible ``n`` up to ``max_n`` (and m = 2, 3 for figA2)."""
    out = []
    for name, (n_min, m_min) in MINIMA.items():
        for n in range(n_min, max_n + 1):
            ms = (2, 3) if name == "figA2" else (m_min,)
            for m in ms:
                out.append((f"{name}(n={n},m={m})", make_fixture(name, n=n, m=m)))
    return out


def random_array(
    rng: random.Random,
    n: int,
    m: int = 1,
    *,
    values: Sequence[Any] = (-1, 0, 1),
    density: float = 0.6,
    skew: bool = False,
    r_min: Any = -1,
    r_max: Any = 1,
) -> ComparisonArray:
    """Each individual compares each pair with probability ``density``.

    Values are drawn from ``values``; ``skew`` sets ``r_ji = -r_ij``,
    otherwise both entries are drawn independently.
    """
    vals = [as_fraction(v) for v in values]
    outs = []
    for p in range(m):
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < density:
                    a = rng.choice(vals)
                    b = -a if skew else rng.choice(vals)
                    outs.append(Outcome(p, i, j, a, b))
    return ComparisonArray(n, m, r_min, r_max, tuple(outs))


def is_connected(array: ComparisonArray) -> bool:
    """Whether the comparison graph links all alternatives."""
    parent = list(range(array.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for o in array.outcomes:
        parent[find(o.i)] = find(o.j)
    return len({find(a) for a in range(array.n)}) == 1
