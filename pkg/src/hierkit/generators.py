"""Random instances that are known to come from actual manifolds or consistent data.

Boundary presentations are assembled from genus-one pieces, each the
homological shadow of a concrete manifold with two boundary surfaces:

``product``
    ``T^2 x I``: both inclusions are the identity.
``link``
    exterior of a two-component link with linking number ``l``: in the
    bases (meridian, longitude) and (longitude, meridian) the inclusions are
    ``diag(1, l)`` and ``diag(l, 1)``.  ``H_1(M, G_-)`` has torsion ``Z/l``.
``handlebody``
    two solid tori joined by a tube: each side keeps ``a`` and kills ``b``.

Pieces are combined by boundary connected sum on the ``+`` side followed by a
1-handle joining the ``-`` sides (one extra free generator in ``H_1(M)``),
then hit with symplectic changes of basis on each side and a unimodular change
of basis of ``H_1(M)``.  Optionally a lens-space summand adds torsion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .boundary_homology import BoundaryPresentation, SurfaceHomology, block_diagonal
from .exact_linalg import IntegerMatrix, prime_factors
from .norm_calculus import BasicClassSet, NormOracle, hull_contains


@dataclass(frozen=True)
class Piece:
    kind: str
    linking: int = 1

    def maps(self) -> tuple[IntegerMatrix, IntegerMatrix]:
        if self.kind == "product":
            return IntegerMatrix.identity(2), IntegerMatrix.identity(2)
        if self.kind == "link":
            l = self.linking
            return IntegerMatrix.diagonal([1, l]), IntegerMatrix.diagonal([l, 1])
        if self.kind == "handlebody":
            return (
                IntegerMatrix.from_rows([[1, 0], [0, 0]]),
                IntegerMatrix.from_rows([[0, 0], [1, 0]]),
            )
        raise ValueError(f"unknown piece {self.kind!r}")


@dataclass
class GeneratedPresentation:
    presentation: BoundaryPresentation
    pieces: list[Piece]
    torsion: list[int] = field(default_factory=list)

    @property
    def expected_primes(self) -> list[int]:
        return sorted({q for p in self.pieces if p.kind == "link" for q in prime_factors(p.linking)})

    @property
    def expected_upsilon(self) -> int:
        return sum(1 for p in self.pieces if p.kind == "handlebody")


def random_unimodular(rng: random.Random, n: int, steps: int = 4) -> IntegerMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-1, 1])
        rows[i] = [x + k * y for x, y in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        i = rng.randrange(n)
        rows[i] = [-x for x in rows[i]]
    return IntegerMatrix.from_rows(rows, n)


def random_symplectic(rng: random.Random, genus: int, steps: int = 3) -> IntegerMatrix:
    """Product of transvections ``x -> x + k ω(x, v) v``."""
    n = 2 * genus
    J = SurfaceHomology(genus).intersection_form()
    result = IntegerMatrix.identity(n)
    for _ in range(steps if n else 0):
        v = [rng.choice([-1, 0, 0, 1]) for _ in range(n)]
        if not any(v):
            v[rng.randrange(n)] = 1
        k = rng.choice([-1, 1])
        vJ = [sum(v[a] * J.rows[a][b] for a in range(n)) for b in range(n)]
        t = IntegerMatrix.from_rows(
            [[int(i == j) - k * v[i] * vJ[j] for j in range(n)] for i in range(n)], n
        )
        result = t @ result
    return result


def assemble(pieces: list[Piece]) -> tuple[IntegerMatrix, IntegerMatrix]:
    plus, minus = zip(*(p.maps() for p in pieces))
    ip, im = block_diagonal(plus), block_diagonal(minus)
    extra = len(pieces) - 1  # one free generator per joining 1-handle
    pad = IntegerMatrix.zeros(extra, ip.ncols)
    return ip.vstack(pad), im.vstack(pad)


def random_presentation(
    rng: random.Random,
    genus: int,
    kinds: tuple[str, ...] = ("product", "link", "handlebody"),
    linkings: tuple[int, ...] = (2, 3, 5, 6, 7, 10, 11),
    torsion: bool = False,
    twist: bool = True,
) -> GeneratedPresentation:
    pieces = []
    for _ in range(genus):
        kind = rng.choice(kinds)
        pieces.append(Piece(kind, rng.choice(linkings) if kind == "link" else 1))
    ip, im = assemble(pieces)
    relations = None
    tors = []
    if torsion:
        t = rng.choice([2, 3, 4, 6])
        tors.append(t)
        ip = ip.vstack(IntegerMatrix.zeros(1, ip.ncols))
        im = im.vstack(IntegerMatrix.zeros(1, im.ncols))
        rel = [[0] for _ in range(ip.nrows)]
        rel[-1][0] = t
        relations = IntegerMatrix.from_rows(rel, 1)
    if twist:
        ip = ip @ random_symplectic(rng, genus)
        im = im @ random_symplectic(rng, genus)
        u = random_unimodular(rng, ip.nrows)
        ip, im = u @ ip, u @ im
        if relations is not None:
            relations = u @ relations
    return GeneratedPresentation(BoundaryPresentation.from_iotas(ip, im, relations), pieces, tors)


def product_presentation(genus: int) -> BoundaryPresentation:
    eye = IntegerMatrix.identity(2 * genus)
    return BoundaryPresentation.from_iotas(eye, eye)


# ---------------------------------------------------------------------------
# norm / basic-class instances


def random_norm(rng: random.Random, rank: int, pairs: int, bound: int = 3) -> NormOracle:
    funcs = set()
    pairs = min(pairs, ((2 * bound + 1) ** rank - 1) // 2)
    while len(funcs) < pairs:
        v = tuple(rng.randint(-bound, bound) for _ in range(rank))
        if any(v) and tuple(-x for x in v) not in funcs:
            funcs.add(v)
    return NormOracle.symmetric(rank, funcs)


def random_basic_classes(rng: random.Random, norm: NormOracle, size: int) -> BasicClassSet:
    """Adjunction-consistent class set, biased towards vertices of the polytope.

    Interior points are drawn from the bounding box and kept when they pass
    the exact hull test.
    """
    vertices = [f for f in norm.functionals if any(f)]
    chosen = set(rng.sample(vertices, min(len(vertices), rng.randint(1, size))))
    bounds = [max(abs(f[i]) for f in norm.functionals) for i in range(norm.rank)]
    for _ in range(2 * size):
        if len(chosen) >= size:
            break
        v = tuple(rng.randint(-b, b) for b in bounds)
        if v not in chosen and hull_contains(norm.functionals, v):
            chosen.add(v)
    return BasicClassSet(frozenset(chosen))


def random_vector(rng: random.Random, rank: int, bound: int = 3) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(rank))


def fibered_knot_pairings(chi_f: int, meridian_pairing: int) -> list[int]:
    """Pairings ``-χ_F, -χ_F + 2, ..., χ_F + 2·pairing`` of a synthetic fibred knot table."""
    return list(range(-chi_f, chi_f + 2 * meridian_pairing + 1, 2))
