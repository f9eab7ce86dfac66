"""Search for primitive classes ``c_± ∈ H_1(G_±)`` that are rationally homologous in ``M``.

The search runs in two branches.  When ``ker ι_+`` has positive rational
dimension, any primitive vertical classes do the job.  Otherwise the boundary
kernel ``K`` is searched: for each excluded prime ``q`` a residue in ``K/qK``
is chosen avoiding the two subspaces of residues whose ``±`` projection is
divisible by ``q``, the residues are glued by the Chinese remainder theorem,
and the resulting kernel element is divided by its content on each side.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .boundary_homology import (
    BoundaryPresentation,
    InvalidPresentationError,
    boundary_kernel,
    upsilon,
    vertical_subspace,
)
from .exact_linalg import (
    RATIONALS,
    IntegerMatrix,
    Vector,
    cokernel,
    content,
    element_order,
    is_prime,
    nullspace,
)

ENUMERATION_LIMIT = 10**6
SAMPLE_ATTEMPTS = 64


@dataclass(frozen=True)
class ExcludedPrimeSet:
    """Primes dividing the torsion of ``H_1(M, G_∓) ≅ coker ι_±``.

    ``projection_primes`` are the primes seen in the torsion of
    ``coker Pr_±``; they are included in ``primes`` as well.
    """

    primes: tuple[int, ...]
    inclusion_primes: tuple[int, ...] = ()
    projection_primes: tuple[int, ...] = ()

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


@dataclass(frozen=True)
class PrimitivePair:
    c_plus: Vector
    c_minus: Vector
    multiplier: int = 1
    branch: str = "kernel"
    transcript: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if content(self.c_plus) != 1 or content(self.c_minus) != 1:
            raise ValueError("pair entries must be primitive")
        if self.multiplier < 1:
            raise ValueError("multiplier must be positive")


def _require_pair_input(p: BoundaryPresentation) -> None:
    p.require_two_components()
    g_plus, g_minus = (s.genus for s, _ in p.components)
    if g_plus != g_minus:
        raise InvalidPresentationError(f"boundary genera differ ({g_plus} vs {g_minus})")
    if g_plus == 0:
        raise InvalidPresentationError("boundary surfaces must have positive genus")


def normalize_torsion_free(p: BoundaryPresentation) -> BoundaryPresentation:
    """Pass to ``H_1(M)/Torsion``; rational homology is unchanged."""
    return p.normalized()


def excluded_primes(p: BoundaryPresentation) -> ExcludedPrimeSet:
    """Primes at which primitivity can fail; computed after torsion normalisation.

    Both the torsion of ``coker ι_±`` and of ``coker Pr_±`` are collected and
    their union returned.  For data coming from a manifold the second set is
    contained in the first.
    """
    p.require_two_components()
    p = normalize_torsion_free(p)
    from_inclusions = set()
    for side in (0, 1):
        from_inclusions.update(cokernel(p.iota(side)).torsion_primes)
    kernel = boundary_kernel(p, RATIONALS).basis
    from_projections = set()
    for side in (0, 1):
        cols = [p.split(v)[side] for v in kernel]
        n = p.components[side][0].rank
        from_projections.update(cokernel(IntegerMatrix.from_columns(cols, n)).torsion_primes)
    return ExcludedPrimeSet(
        tuple(sorted(from_inclusions | from_projections)),
        tuple(sorted(from_inclusions)),
        tuple(sorted(from_projections)),
    )


def _projection_matrix(p: BoundaryPresentation, kernel: Sequence[Vector], side: int) -> IntegerMatrix:
    """Matrix of ``Pr_side`` in the kernel basis (columns are projected basis vectors)."""
    n = p.components[side][0].rank
    return IntegerMatrix.from_columns([p.split(v)[side] for v in kernel], n)


@dataclass(frozen=True)
class ResidueSubspace:
    """Subspace ``A^±_q`` of ``K/qK``, written in coordinates of ``kernel_basis``."""

    prime: int
    side: str
    kernel_basis: tuple[Vector, ...]
    basis: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def a_p_subspace(p: BoundaryPresentation, q: int, side: str) -> ResidueSubspace:
    """Image in ``K/qK`` of the kernel elements whose ``side`` projection lies in ``q·H^side``.

    Changing a lift by ``qK`` moves the projection by ``q·Pr(K)``, so the
    subspace is the mod-``q`` null space of the projection matrix.
    Raises :class:`InvalidPresentationError` when its dimension exceeds the genus.
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    _require_pair_input(p)
    p = normalize_torsion_free(p)
    kernel = boundary_kernel(p, RATIONALS).basis
    proj = _projection_matrix(p, kernel, 0 if side == "+" else 1)
    basis = tuple(nullspace(proj, q))
    if len(basis) > p.genus:
        raise InvalidPresentationError(
            f"A^{side}_{q} has dimension {len(basis)} > genus {p.genus}"
        )
    return ResidueSubspace(q, side, tuple(kernel), basis)


def crt_lift(primes: Sequence[int], residues: Sequence[Sequence[int]], m: int | None = None) -> Vector:
    """Coordinatewise Chinese remaindering; entries land in ``[0, P)``."""
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be pairwise distinct")
    if len(primes) != len(residues):
        raise ValueError("one residue vector per prime")
    if m is None:
        m = len(residues[0]) if residues else 0
    if any(len(r) != m for r in residues):
        raise ValueError(f"residue vectors must have {m} coordinates")
    P = math.prod(primes)
    x = [0] * m
    for q, r in zip(primes, residues):
        cofactor = P // q
        weight = cofactor * pow(cofactor, -1, q)
        for j in range(m):
            x[j] = (x[j] + (r[j] % q) * weight) % P
    return tuple(x)


def _outside(proj_plus: IntegerMatrix, proj_minus: IntegerMatrix, r: Sequence[int], q: int) -> bool:
    return any(x % q for x in proj_plus.apply(r)) and any(x % q for x in proj_minus.apply(r))


def select_residue(p: BoundaryPresentation, q: int, seed: int = 0) -> tuple[Vector, str]:
    """Residue in ``K/qK`` outside ``A^+_q ∪ A^-_q`` and the method that found it.

    Small quotients are enumerated lexicographically.  Large ones are sampled
    with a seeded generator, then fall back to the structured choice
    ``v``, ``w`` or ``v + w`` where ``v ∉ A^+`` and ``w ∉ A^-``.
    """
    p = normalize_torsion_free(p)
    kernel = boundary_kernel(p, RATIONALS).basis
    d = len(kernel)
    pp, pm = _projection_matrix(p, kernel, 0), _projection_matrix(p, kernel, 1)
    if q**d <= ENUMERATION_LIMIT:
        for r in itertools.product(range(q), repeat=d):
            if _outside(pp, pm, r, q):
                return tuple(r), "enumeration"
        raise InvalidPresentationError(f"every residue mod {q} lies in A^+ ∪ A^-")
    rng = random.Random(f"{seed}:{q}")
    for _ in range(SAMPLE_ATTEMPTS):
        r = tuple(rng.randrange(q) for _ in range(d))
        if _outside(pp, pm, r, q):
            return r, "sampling"
    unit = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    v = next((e for e in unit if any(x % q for x in pp.apply(e))), None)
    w = next((e for e in unit if any(x % q for x in pm.apply(e))), None)
    if v is None or w is None:
        raise InvalidPresentationError(f"a projection vanishes identically mod {q}")
    for r in (v, w, tuple((a + b) % q for a, b in zip(v, w))):
        if _outside(pp, pm, r, q):
            return r, "structured"
    raise InvalidPresentationError(f"no residue mod {q} avoids A^+ ∪ A^-")


def find_kernel_element(
    p: BoundaryPresentation, excluded: ExcludedPrimeSet | Sequence[int], seed: int = 0
) -> Vector:
    """Element ``b = (b^+, b^-)`` of the boundary kernel with neither side divisible by an excluded prime."""
    return _find_kernel_element(p, excluded, seed)[0]


def _find_kernel_element(p, excluded, seed):
    _require_pair_input(p)
    p = normalize_torsion_free(p)
    if upsilon(p) != 0:
        raise ValueError("kernel search needs ker ι_± = 0 rationally")
    kernel = boundary_kernel(p, RATIONALS).basis
    primes = list(excluded)
    if not primes:
        return kernel[0], {}
    chosen = {q: select_residue(p, q, seed) for q in primes}
    coords = crt_lift(primes, [chosen[q][0] for q in primes], len(kernel))
    b = tuple(sum(c * v[j] for c, v in zip(coords, kernel)) for j in range(p.boundary_rank))
    return b, {q: {"residue": list(r), "method": how} for q, (r, how) in chosen.items()}


def extract_primitive_pair(
    b: Sequence[int], p: BoundaryPresentation, excluded: ExcludedPrimeSet | Sequence[int] = ()
) -> PrimitivePair:
    """Split ``b`` into ``k·(c^+, c^-)`` with primitive ``c^±``."""
    p.require_two_components()
    b_plus, b_minus = p.split(b)
    for q in excluded:
        for part, name in ((b_plus, "b+"), (b_minus, "b-")):
            if all(x % q == 0 for x in part):
                raise ValueError(f"{name} is divisible by excluded prime {q}")
    k_plus, k_minus = content(b_plus), content(b_minus)
    if k_plus == 0 or k_minus == 0:
        raise InvalidPresentationError("kernel element has a zero side")
    if k_plus != k_minus:
        raise InvalidPresentationError(
            f"contents differ on the two sides ({k_plus} vs {k_minus})"
        )
    return PrimitivePair(
        tuple(x // k_plus for x in b_plus),
        tuple(x // k_minus for x in b_minus),
        1,
        "kernel",
        {"b": list(b), "content": k_plus},
    )


def _order_in_h1(p: BoundaryPresentation, v: Sequence[int]) -> int:
    """Order of ``v`` in ``H_1(M)``, with 0 standing for infinite order."""
    if not any(v):
        return 1
    if p.relations is None:
        return 0
    order = element_order(p.relations, v)
    return 0 if order is None else order


def find_primitive_homologous_pair(p: BoundaryPresentation, seed: int = 0) -> PrimitivePair:
    """Primitive ``c_±`` with ``m·ι_+(c_+) = m·ι_-(c_-)`` in ``H_1(M)``."""
    _require_pair_input(p)
    clean = normalize_torsion_free(p)
    ups = upsilon(clean)
    if ups > 0:
        v_plus = vertical_subspace(clean, 0, RATIONALS)
        v_minus = vertical_subspace(clean, 1, RATIONALS)
        if not v_minus:
            raise InvalidPresentationError("ker ι_+ is nonzero but ker ι_- is zero")
        c_plus, c_minus = v_plus[0], v_minus[0]
        orders = [_order_in_h1(p, p.iota(0).apply(c_plus)), _order_in_h1(p, p.iota(1).apply(c_minus))]
        if 0 in orders:
            raise InvalidPresentationError("vertical class has infinite order")
        return PrimitivePair(
            c_plus, c_minus, math.lcm(*orders), "vertical", {"upsilon": ups}
        )
    excl = excluded_primes(clean)
    b, residues = _find_kernel_element(clean, excl, seed)
    pair = extract_primitive_pair(b, clean, excl)
    diff = tuple(x - y for x, y in zip(p.iota(0).apply(pair.c_plus), p.iota(1).apply(pair.c_minus)))
    m = _order_in_h1(p, diff)
    if m == 0:
        raise InvalidPresentationError("extracted classes are not rationally homologous")
    return PrimitivePair(
        pair.c_plus,
        pair.c_minus,
        m,
        "kernel",
        {
            "upsilon": 0,
            "excluded_primes": list(excl.primes),
            "residues": {str(q): v for q, v in residues.items()},
            **pair.transcript,
        },
    )


@dataclass(frozen=True)
class PairCheck:
    primitive_plus: bool
    primitive_minus: bool
    homologous: bool

    @property
    def ok(self) -> bool:
        return self.primitive_plus and self.primitive_minus and self.homologous


def verify_pair(p: BoundaryPresentation, pair: PrimitivePair) -> PairCheck:
    """Re-check a pair directly from the raw inclusion matrix and relations."""
    p.require_two_components()
    diff = [
        pair.multiplier * (x - y)
        for x, y in zip(p.iota(0).apply(pair.c_plus), p.iota(1).apply(pair.c_minus))
    ]
    if p.relations is None:
        homologous = not any(diff)
    else:
        homologous = not any(diff) or element_order(p.relations, diff) == 1
    return PairCheck(content(pair.c_plus) == 1, content(pair.c_minus) == 1, homologous)


def residue_avoids(p: BoundaryPresentation, b: Sequence[int], q: int) -> bool:
    """Independent check that ``b`` mod ``q`` lies outside ``A^+_q ∪ A^-_q``."""
    b_plus, b_minus = p.split(b)
    return any(x % q for x in b_plus) and any(x % q for x in b_minus)


__all__ = [
    "ExcludedPrimeSet",
    "PrimitivePair",
    "ResidueSubspace",
    "PairCheck",
    "normalize_torsion_free",
    "excluded_primes",
    "a_p_subspace",
    "crt_lift",
    "select_residue",
    "find_kernel_element",
    "extract_primitive_pair",
    "find_primitive_homologous_pair",
    "verify_pair",
    "residue_avoids",
]
