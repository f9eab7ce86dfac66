"""Thurston seminorm given by its dual polytope, and bottommost basic classes.

The norm is ``χ_-(h) = max_{φ ∈ Φ} <φ, h>`` for a finite symmetric set ``Φ``
of integer functionals containing 0.  A basic class set ``B`` is a finite set
of integer vectors; ``α`` is bottommost for ``h`` when ``<α, h> = -χ_-(h)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[int, ...]

EXACT_HULL_MAX_RANK = 6


def pairing(a: Sequence[int], h: Sequence[int]) -> int:
    if len(a) != len(h):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(h)}")
    return sum(x * y for x, y in zip(a, h))


@dataclass(frozen=True)
class NormOracle:
    rank: int
    functionals: tuple[Vector, ...]

    def __post_init__(self):
        fs = set(self.functionals)
        if any(len(f) != self.rank for f in fs):
            raise ValueError(f"functionals must have length {self.rank}")
        if (0,) * self.rank not in fs:
            raise ValueError("functional set must contain 0")
        if any(tuple(-x for x in f) not in fs for f in fs):
            raise ValueError("functional set must be symmetric under negation")

    @classmethod
    def symmetric(cls, rank: int, functionals: Iterable[Sequence[int]]) -> "NormOracle":
        """Close ``functionals`` under negation and add the zero functional."""
        fs = {(0,) * rank}
        for f in functionals:
            f = tuple(int(x) for x in f)
            fs.add(f)
            fs.add(tuple(-x for x in f))
        return cls(rank, tuple(sorted(fs)))


@dataclass(frozen=True)
class BasicClassSet:
    classes: frozenset

    @classmethod
    def of(cls, classes: Iterable[Sequence[int]]) -> "BasicClassSet":
        return cls(frozenset(tuple(int(x) for x in c) for c in classes))

    def __iter__(self):
        return iter(sorted(self.classes))

    def __len__(self):
        return len(self.classes)

    def __contains__(self, item):
        return tuple(item) in self.classes

    def __and__(self, other: "BasicClassSet") -> "BasicClassSet":
        return BasicClassSet(self.classes & other.classes)

    def __le__(self, other: "BasicClassSet") -> bool:
        return self.classes <= other.classes

    def sorted(self) -> list[Vector]:
        return sorted(self.classes)


def chi_minus(norm: NormOracle, h: Sequence[int]) -> int:
    if len(h) != norm.rank:
        raise ValueError(f"class has length {len(h)}, norm has rank {norm.rank}")
    return max(pairing(f, h) for f in norm.functionals)


def bottommost(B: BasicClassSet, norm: NormOracle, h: Sequence[int]) -> BasicClassSet:
    target = -chi_minus(norm, h)
    return BasicClassSet(frozenset(a for a in B.classes if pairing(a, h) == target))


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


@dataclass(frozen=True)
class AdditivityReport:
    """Outcome of the sum rule for bottommost classes of ``h_1``, ``h_2``, ``h_1 + h_2``."""

    chi_h1: int
    chi_h2: int
    chi_sum: int
    bottom_h1: BasicClassSet
    bottom_h2: BasicClassSet
    bottom_sum: BasicClassSet

    @property
    def additive(self) -> bool:
        return self.chi_sum == self.chi_h1 + self.chi_h2

    @property
    def strict(self) -> bool:
        return self.chi_sum < self.chi_h1 + self.chi_h2

    @property
    def intersection(self) -> BasicClassSet:
        return self.bottom_h1 & self.bottom_h2

    @property
    def triple_intersection(self) -> BasicClassSet:
        return self.bottom_h1 & self.bottom_h2 & self.bottom_sum


def _additivity(B, norm, h1, h2) -> AdditivityReport:
    s = _add(h1, h2)
    return AdditivityReport(
        chi_minus(norm, h1),
        chi_minus(norm, h2),
        chi_minus(norm, s),
        bottommost(B, norm, h1),
        bottommost(B, norm, h2),
        bottommost(B, norm, s),
    )


@dataclass(frozen=True)
class Part1Report:
    data: AdditivityReport

    @property
    def additive(self) -> bool:
        return self.data.additive

    @property
    def holds(self) -> bool:
        """Set equality when additive; vacuously true otherwise."""
        return not self.additive or self.data.bottom_sum == self.data.intersection


@dataclass(frozen=True)
class Part2Report:
    data: AdditivityReport

    @property
    def precondition_met(self) -> bool:
        return self.data.strict

    @property
    def holds(self) -> bool:
        return not self.precondition_met or len(self.data.triple_intersection) == 0


def check_h1h2_part1(B: BasicClassSet, norm: NormOracle, h1: Sequence[int], h2: Sequence[int]) -> Part1Report:
    """If ``χ(h1+h2) = χ(h1)+χ(h2)`` the bottom of the sum is the intersection of the bottoms."""
    return Part1Report(_additivity(B, norm, h1, h2))


def check_h1h2_part2(B: BasicClassSet, norm: NormOracle, h1: Sequence[int], h2: Sequence[int]) -> Part2Report:
    """Under strict subadditivity no class is bottommost for all of ``h1``, ``h2``, ``h1+h2``."""
    return Part2Report(_additivity(B, norm, h1, h2))


def _line_crossings(lines: Sequence[tuple[int, int]]) -> list[Fraction]:
    out = []
    for (s1, c1), (s2, c2) in itertools.combinations(lines, 2):
        if s1 != s2:
            out.append(Fraction(c2 - c1, s1 - s2))
    return out


@dataclass(frozen=True)
class StabilizationReport:
    bound: int
    inclusion_threshold: int
    linearity_threshold: int
    horizon: int
    constant: int


def stabilization_report(B: BasicClassSet, norm: NormOracle, h1: Sequence[int], h2: Sequence[int]) -> StabilizationReport:
    """Exact threshold past which ``B(m h1 + h2) ⊆ B(h1)`` and ``χ(m h1 + h2) - m χ(h1)`` is constant.

    As a function of ``m`` every pairing is a line ``m·s + c``.  The norm is
    the upper envelope of the functional lines, and a class is bottommost
    exactly where its line meets the lower envelope.  Past every crossing of
    these lines nothing changes, so scanning integers up to that horizon is
    exhaustive.
    """
    f_lines = [(pairing(f, h1), pairing(f, h2)) for f in norm.functionals]
    a_lines = [(pairing(a, h1), pairing(a, h2)) for a in B.classes]
    crossings = _line_crossings(f_lines + a_lines)
    horizon = max([1] + [math.floor(x) for x in crossings if x > 0]) + 2

    bottom_h1 = bottommost(B, norm, h1)
    last_bad = 0
    for m in range(1, horizon + 1):
        h = tuple(m * x + y for x, y in zip(h1, h2))
        if not bottommost(B, norm, h) <= bottom_h1:
            last_bad = m
    chi1 = chi_minus(norm, h1)
    diffs = [chi_minus(norm, tuple(m * x + y for x, y in zip(h1, h2))) - m * chi1 for m in range(1, horizon + 1)]
    lin = horizon
    while lin > 1 and diffs[lin - 2] == diffs[-1]:
        lin -= 1
    incl = last_bad + 1
    return StabilizationReport(max(incl, lin), incl, lin, horizon, diffs[-1])


def stabilization_bound(B: BasicClassSet, norm: NormOracle, h1: Sequence[int], h2: Sequence[int]) -> int:
    return stabilization_report(B, norm, h1, h2).bound


def check_successor_condition(
    B_next: BasicClassSet, norm_next: NormOracle, g_prev_class: Sequence[int], g_next_class: Sequence[int]
) -> bool:
    """``B(g_next) ⊆ B(g_prev)``, both computed in the new manifold."""
    return bottommost(B_next, norm_next, g_next_class) <= bottommost(B_next, norm_next, g_prev_class)


# ---------------------------------------------------------------------------
# adjunction / hull membership


def _phase_one(A: list[list[int]], b: list[int]) -> bool:
    """Is ``{x >= 0 : A x = b}`` nonempty?  Exact phase-one simplex, Bland's rule."""
    m = len(A)
    n = len(A[0]) if A else 0
    rows = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        rows.append(
            [Fraction(s * x) for x in A[i]]
            + [Fraction(int(i == j)) for j in range(m)]
            + [Fraction(s * b[i])]
        )
    basis = [n + i for i in range(m)]
    total = n + m
    while True:
        enter = None
        for j in range(total):
            if j in basis:
                continue
            cost = (1 if j >= n else 0) - sum(rows[i][j] for i in range(m) if basis[i] >= n)
            if cost < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:  # cannot happen: objective is bounded below by 0
            break
        r = leave[1]
        piv = rows[r][enter]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        basis[r] = enter
    return sum(rows[i][-1] for i in range(m) if basis[i] >= n) == 0


def hull_contains(points: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Exact test of ``target ∈ conv(points)``."""
    if not points:
        return False
    dim = len(target)
    A = [[p[k] for p in points] for k in range(dim)] + [[1] * len(points)]
    return _phase_one(A, list(target) + [1])


@dataclass(frozen=True)
class AdjunctionReport:
    mode: str  # "exact" or "partial"
    consistent: bool
    violations: tuple[Vector, ...]


def default_probes(rank: int) -> list[Vector]:
    unit = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    probes = list(unit)
    for u, v in itertools.combinations(unit, 2):
        probes.append(_add(u, v))
        probes.append(tuple(x - y for x, y in zip(u, v)))
    return probes


def validate_adjunction(
    B: BasicClassSet, norm: NormOracle, probes: Sequence[Sequence[int]] | None = None
) -> AdjunctionReport:
    """Check ``|<α, h>| <= χ_-(h)`` for all ``α ∈ B``.

    Up to rank 6 this is decided exactly as membership of ``α`` in the convex
    hull of the functionals.  Beyond that only the probe classes are checked
    and the report is marked partial.
    """
    if norm.rank <= EXACT_HULL_MAX_RANK:
        bad = tuple(a for a in B if not hull_contains(norm.functionals, a))
        return AdjunctionReport("exact", not bad, bad)
    probes = default_probes(norm.rank) if probes is None else [tuple(p) for p in probes]
    bad = tuple(
        a for a in B if any(abs(pairing(a, h)) > chi_minus(norm, h) for h in probes)
    )
    return AdjunctionReport("partial", not bad, bad)
