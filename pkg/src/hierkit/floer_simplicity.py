"""Rank-table calculus for knots in 3-manifolds.

Floer groups are never computed here; they enter as finite tables of ranks
indexed by (relative) Chern class vectors.  A knot table carries the pullback
``j*`` from relative classes to ambient ones so the two tables can be compared
class by class.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact_linalg import AbelianGroupStructure, IntegerMatrix, cokernel, kernel_basis
from .norm_calculus import BasicClassSet, NormOracle, chi_minus, pairing

Vector = tuple[int, ...]


class InvalidInputError(ValueError):
    """Rank data that cannot come from an actual knot."""


def _clean(entries: Mapping) -> dict[Vector, int]:
    out = {}
    for k, r in entries.items():
        k = tuple(int(x) for x in k)
        r = int(r)
        if r < 0:
            raise InvalidInputError(f"negative rank {r} at {k}")
        if r:
            out[k] = r
    return out


@dataclass(frozen=True)
class SpincRankTable:
    entries: Mapping[Vector, int]

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))

    def rank(self, c: Sequence[int]) -> int:
        return self.entries.get(tuple(c), 0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def support(self) -> list[Vector]:
        return sorted(self.entries)


@dataclass(frozen=True)
class KnotRankTable:
    entries: Mapping[Vector, int]
    pullback: IntegerMatrix
    meridian_pairing: int | None = None
    pushforward: IntegerMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))
        for k in self.entries:
            if len(k) != self.pullback.ncols:
                raise InvalidInputError(f"relative class {k} does not match pullback width {self.pullback.ncols}")

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def support(self) -> list[Vector]:
        return sorted(self.entries)

    def pulled_back(self) -> dict[Vector, int]:
        """Ranks summed over the fibres of ``j*``."""
        out: dict[Vector, int] = defaultdict(int)
        for xi, r in self.entries.items():
            out[self.pullback.apply(xi)] += r
        return dict(out)


def validate_pair(k: KnotRankTable, t: SpincRankTable) -> None:
    """Knot ranks dominate ambient ranks class by class (hence also in total)."""
    pulled = k.pulled_back()
    for c, r in t.entries.items():
        if len(c) != k.pullback.nrows:
            raise InvalidInputError(f"ambient class {c} does not match pullback height {k.pullback.nrows}")
        if pulled.get(c, 0) < r:
            raise InvalidInputError(
                f"knot rank {pulled.get(c, 0)} over class {c} is below ambient rank {r}"
            )


def basic_classes_from_ranks(t: SpincRankTable) -> BasicClassSet:
    return BasicClassSet(frozenset(t.entries))


def is_floer_simple(k: KnotRankTable, t: SpincRankTable) -> bool:
    validate_pair(k, t)
    return k.total == t.total


def is_bottommostly_simple(k: KnotRankTable, t: SpincRankTable, norm: NormOracle, h: Sequence[int]) -> bool:
    """Rank equality over every ambient class pairing to at most ``-χ_-(h)`` with ``h``."""
    validate_pair(k, t)
    bound = -chi_minus(norm, h)
    pulled = k.pulled_back()
    for c in set(pulled) | set(t.entries):
        if pairing(c, h) <= bound and pulled.get(c, 0) != t.rank(c):
            return False
    return True


@dataclass(frozen=True)
class ExtremeClassReport:
    minimum: int
    maximum: int
    expected_minimum: int
    expected_maximum: int

    @property
    def min_ok(self) -> bool:
        return self.minimum == self.expected_minimum

    @property
    def max_ok(self) -> bool:
        return self.maximum == self.expected_maximum

    @property
    def ok(self) -> bool:
        return self.min_ok and self.max_ok


def check_extreme_classes(k: KnotRankTable, F_class: Sequence[int], chi_F: int) -> ExtremeClassReport:
    """Compare the extreme pairings of the knot support with ``-χ_F`` and ``χ_F + 2·|∂F·μ|``."""
    if not k.entries:
        raise InvalidInputError("knot table has empty support")
    if k.meridian_pairing is None:
        raise InvalidInputError("meridian pairing not declared")
    if chi_F < 0:
        raise InvalidInputError("chi_F must be nonnegative")
    values = [pairing(xi, F_class) for xi in k.entries]
    mp = abs(k.meridian_pairing)
    return ExtremeClassReport(min(values), max(values), -chi_F, chi_F + 2 * mp)


def check_norm_restriction(norm_y: NormOracle, norm_x: NormOracle, h: Sequence[int]) -> bool:
    if norm_y.rank != norm_x.rank:
        raise ValueError("norms live on different H_2 ranks")
    return chi_minus(norm_y, h) == chi_minus(norm_x, h)


def synthetic_fibered_table(chi_F: int, meridian_pairing: int) -> KnotRankTable:
    """One-variable knot table with ranks 1 at ``-χ_F, -χ_F+2, ..., χ_F+2·pairing``."""
    values = range(-chi_F, chi_F + 2 * meridian_pairing + 1, 2)
    return KnotRankTable({(v,): 1 for v in values}, IntegerMatrix.identity(1), meridian_pairing)


# ---------------------------------------------------------------------------
# U-tower at the bottom Spin^c structure


@dataclass(frozen=True)
class TowerReport:
    depth: int
    per_depth: tuple[tuple[int, AbelianGroupStructure], ...]
    stable: bool
    hfplus_is_Z: bool

    @property
    def kernel_rank(self) -> int:
        return self.per_depth[-1][0]

    @property
    def cokernel_structure(self) -> AbelianGroupStructure:
        return self.per_depth[-1][1]

    @property
    def homology(self) -> AbelianGroupStructure:
        coker = self.cokernel_structure
        return AbelianGroupStructure(self.kernel_rank + coker.free_rank, coker.torsion_coefficients)


def _valuation(f: Sequence[int]) -> int | None:
    for i, c in enumerate(f):
        if c:
            return i + 1
    return None


def _tower_matrix(f: Sequence[int], x_depths: int, y_depths: int) -> IntegerMatrix:
    """Columns ``U^{-k} x`` (k < x_depths), rows ``U^{-l} y`` (l < y_depths).

    ``U^{-k} x`` maps to ``Σ_j c_j U^{j-k} y``; terms with positive U-power
    vanish in the ``i >= 0`` quotient.
    """
    rows = [[0] * x_depths for _ in range(y_depths)]
    for k in range(x_depths):
        for j, c in enumerate(f, start=1):
            l = k - j
            if 0 <= l < y_depths:
                rows[l][k] = c
    return IntegerMatrix.from_rows(rows, x_depths)


def _depth_structure(f, t: int, a: int | None) -> tuple[int, AbelianGroupStructure]:
    # kernel: x generators below depth t can only hit y below depth t
    ker = len(kernel_basis(_tower_matrix(f, t, t)))
    # cokernel on y below depth t, using every x that reaches those depths
    reach = t + (a or 0)
    coker = cokernel(_tower_matrix(f, reach, t))
    return ker, coker


def tower_homology(f_coefficients: Sequence[int], depth: int, constant_term: int = 0) -> TowerReport:
    """Homology of ``x -> f(U) y`` on two truncated towers.

    ``f_coefficients[i]`` is the coefficient of ``U^(i+1)``.  The result is
    the kernel (free) plus cokernel of the differential, computed at every
    truncation ``1..depth``; it is stable when the last ``deg f + 1`` of these
    agree.
    """
    if constant_term:
        raise InvalidInputError("f must have zero constant term")
    if depth < 1:
        raise InvalidInputError("depth must be at least 1")
    f = [int(c) for c in f_coefficients]
    while f and f[-1] == 0:
        f.pop()
    a = _valuation(f)
    per = tuple(_depth_structure(f, t, a) for t in range(1, depth + 1))
    window = max(len(f), 1) + 1
    stable = depth >= window and all(s == per[-1] for s in per[-window:])
    report = TowerReport(depth, per, stable, False)
    h = report.homology
    is_z = stable and h.free_rank == 1 and not h.torsion_coefficients
    return TowerReport(depth, per, stable, is_z)


# ---------------------------------------------------------------------------
# surface-bundle obstruction


@dataclass(frozen=True)
class BundleVerdict:
    lhs: int
    required: int
    bound: int
    subadditive: bool

    @property
    def contradiction(self) -> bool:
        return self.required > self.bound

    @property
    def chain_consistent(self) -> bool:
        """Whether the inputs actually realise the equality ``lhs = required``."""
        return self.lhs == self.required

    @property
    def verdict(self) -> str:
        return "CONTRADICTION" if self.contradiction else "CONSISTENT"


def bundle_unknot_obstruction(
    chi_G: int,
    n: int,
    chi_plus: int,
    chi_minus_: int,
    chi_double: int,
    meridian_term: bool = True,
) -> BundleVerdict:
    """Evaluate the pairing chain for a fibre ``G`` and Seifert class ``F``.

    With the unique bottom class ``c`` pairing ``-2n χ(G)`` with ``2n[G]``,
    splitting ``2n[G] = (n[G]+[F]) + (n[G]-[F])`` and using the extreme-class
    formulas gives ``-χ(nG+F) - χ(nG-F) - 2``; subadditivity bounds this by
    ``-χ(2nG) - 2``.  ``meridian_term=False`` drops the ``-2`` (the case of
    a disk, where there is no shift).
    """
    if chi_G < 2 or chi_G % 2:
        raise InvalidInputError("chi_G must be a positive even integer (fibre genus > 1)")
    shift = 2 if meridian_term else 0
    lhs = -chi_plus - chi_minus_ - shift
    required = -2 * n * chi_G
    bound = -chi_double - shift
    return BundleVerdict(lhs, required, bound, chi_double <= chi_plus + chi_minus_)
