"""First homology of the boundary of a 3-manifold and its map into the interior.

A :class:`BoundaryPresentation` records the boundary surfaces (genus and
orientation sign), the inclusion-induced map ``i_*: H_1(∂M) -> H_1(M)`` in
symplectic bases ``a_1, b_1, ..., a_g, b_g`` and, optionally, relations
presenting torsion in ``H_1(M)``.

Sign convention: the column block of component ``i`` stores ``sign_i * ι_i``.
For ``∂M = G_+ ⊔ (-G_-)`` the matrix is ``[ι_+ | -ι_-]`` so a kernel vector
``(x_+, x_-)`` is literally a pair with ``ι_+(x_+) = ι_-(x_-)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    RATIONALS,
    IntegerMatrix,
    Vector,
    bilinear,
    check_field,
    nullspace,
    orthogonal_complement,
    rank_over,
    same_span,
    smith_normal_form,
    span_basis,
)


class InvalidPresentationError(ValueError):
    """Input cannot be the boundary data of a compact 3-manifold."""


@dataclass(frozen=True)
class SurfaceHomology:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def labels(self) -> list[str]:
        return [f"{c}{i}" for i in range(1, self.genus + 1) for c in "ab"]

    def intersection_form(self) -> IntegerMatrix:
        n = self.rank
        rows = [[0] * n for _ in range(n)]
        for i in range(self.genus):
            rows[2 * i][2 * i + 1] = 1
            rows[2 * i + 1][2 * i] = -1
        return IntegerMatrix.from_rows(rows, n)


def block_diagonal(blocks: Sequence[IntegerMatrix]) -> IntegerMatrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            rows[r0 + i][c0 : c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return IntegerMatrix.from_rows(rows, m)


@dataclass(frozen=True)
class BoundaryPresentation:
    """Boundary surfaces plus the (signed) inclusion map into ``H_1(M)``.

    ``H_1(M) = Z^ambient_rank / im(relations)``; with ``relations=None`` it is
    free of rank ``ambient_rank``.  Component ``0`` plays the role of ``G_+``
    and component ``1`` of ``G_-`` in the two-component operations.
    """

    components: tuple[tuple[SurfaceHomology, int], ...]
    ambient_rank: int
    inclusion: IntegerMatrix
    relations: IntegerMatrix | None = None

    def __post_init__(self):
        for _, sign in self.components:
            if sign not in (1, -1):
                raise ValueError(f"orientation sign must be +1 or -1, got {sign}")
        width = sum(s.rank for s, _ in self.components)
        if self.inclusion.shape != (self.ambient_rank, width):
            raise ValueError(
                f"inclusion has shape {self.inclusion.shape}, expected ({self.ambient_rank}, {width})"
            )
        if self.relations is not None and self.relations.nrows != self.ambient_rank:
            raise ValueError("relations must have one row per generator of H_1(M)")

    @classmethod
    def from_iotas(
        cls,
        iota_plus: IntegerMatrix,
        iota_minus: IntegerMatrix,
        relations: IntegerMatrix | None = None,
    ) -> "BoundaryPresentation":
        """Two-component presentation ``∂M = G_+ ⊔ (-G_-)`` from the unsigned maps."""
        if iota_plus.nrows != iota_minus.nrows:
            raise ValueError("ι_+ and ι_- must land in the same H_1(M)")
        if iota_plus.ncols % 2 or iota_minus.ncols % 2:
            raise ValueError("surface homology has even rank")
        comps = (
            (SurfaceHomology(iota_plus.ncols // 2), 1),
            (SurfaceHomology(iota_minus.ncols // 2), -1),
        )
        return cls(comps, iota_plus.nrows, iota_plus.hstack(iota_minus.scale(-1)), relations)

    @property
    def boundary_rank(self) -> int:
        return self.inclusion.ncols

    def offsets(self) -> list[int]:
        out, k = [], 0
        for s, _ in self.components:
            out.append(k)
            k += s.rank
        return out

    def block(self, i: int) -> IntegerMatrix:
        """Stored (sign-multiplied) column block of component ``i``."""
        start = self.offsets()[i]
        width = self.components[i][0].rank
        return self.inclusion.submatrix(range(self.ambient_rank), range(start, start + width))

    def iota(self, i: int) -> IntegerMatrix:
        """Unsigned map ``H_1(G_i) -> H_1(M)``."""
        return self.block(i).scale(self.components[i][1])

    def omega(self) -> IntegerMatrix:
        """Intersection form on ``H_1(∂M)``: the signed direct sum of the component forms."""
        return block_diagonal([s.intersection_form().scale(sign) for s, sign in self.components])

    def require_two_components(self) -> None:
        if len(self.components) != 2:
            raise ValueError(f"operation needs exactly two boundary components, got {len(self.components)}")

    @property
    def genus(self) -> int:
        return self.components[0][0].genus

    def split(self, v: Sequence[int]) -> tuple[Vector, Vector]:
        """Split a vector of ``H_1(∂M)`` into its ``G_+`` and ``G_-`` parts."""
        self.require_two_components()
        k = self.components[0][0].rank
        return tuple(v[:k]), tuple(v[k:])

    def normalized(self) -> "BoundaryPresentation":
        """Replace ``H_1(M)`` by ``H_1(M)/Torsion``, composing the inclusion with the quotient."""
        if self.relations is None:
            return self
        snf = smith_normal_form(self.relations)
        moved = snf.left @ self.inclusion
        keep = range(snf.rank, self.ambient_rank)
        return BoundaryPresentation(
            self.components,
            len(keep),
            moved.submatrix(keep, range(self.boundary_rank)),
        )


def map_kernel(m: IntegerMatrix, relations: IntegerMatrix | None, field: int) -> list[Vector]:
    """Kernel over the field of ``m`` followed by the quotient ``Z^n -> Z^n/im(relations)``."""
    check_field(field)
    if relations is None or relations.ncols == 0:
        return nullspace(m, field)
    if field == RATIONALS:
        # rationally the relations only remove free directions; use H_1/Torsion
        snf = smith_normal_form(relations)
        moved = snf.left @ m
        return nullspace(moved.submatrix(range(snf.rank, m.nrows), range(m.ncols)), field)
    joint = nullspace(m.hstack(relations), field)
    return span_basis([v[: m.ncols] for v in joint], m.ncols, field)


@dataclass(frozen=True)
class LagrangianKernel:
    field: int
    basis: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class LagrangianReport:
    isotropic: bool
    half_dimensional: bool
    dimension: int
    expected_dimension: int

    @property
    def valid(self) -> bool:
        return self.isotropic and self.half_dimensional


def boundary_kernel(p: BoundaryPresentation, field: int = RATIONALS) -> LagrangianKernel:
    """Kernel of ``i_*`` over the field (saturated integer kernel over the rationals)."""
    return LagrangianKernel(field, tuple(map_kernel(p.inclusion, p.relations, field)))


def verify_lagrangian(k: LagrangianKernel, p: BoundaryPresentation) -> LagrangianReport:
    n = p.boundary_rank
    if any(len(v) != n for v in k.basis):
        raise ValueError(f"kernel vectors must have length {n}")
    omega = p.omega()
    isotropic = True
    for i, u in enumerate(k.basis):
        for v in k.basis[i + 1 :]:
            w = bilinear(u, omega, v)
            if (w if k.field == RATIONALS else w % k.field) != 0:
                isotropic = False
    dim = rank_over(k.basis, n, k.field)
    return LagrangianReport(isotropic, 2 * dim == n, dim, n // 2)


@dataclass(frozen=True)
class VerticalData:
    """Projections of the boundary kernel and the vertical subspaces ``ker ι_±``."""

    field: int
    image_plus: tuple[Vector, ...]
    image_minus: tuple[Vector, ...]
    vertical_plus: tuple[Vector, ...]
    vertical_minus: tuple[Vector, ...]
    plus_is_perp: bool
    minus_is_perp: bool

    @property
    def dims_equal(self) -> bool:
        return len(self.vertical_plus) == len(self.vertical_minus)

    @property
    def valid(self) -> bool:
        return self.plus_is_perp and self.minus_is_perp and self.dims_equal


def vertical_subspace(p: BoundaryPresentation, side: int, field: int = RATIONALS) -> list[Vector]:
    """``ker(ι_side)`` over the field; ``side`` is 0 for ``G_+`` and 1 for ``G_-``."""
    return map_kernel(p.block(side), p.relations, field)


def projections_and_verticals(p: BoundaryPresentation, field: int = RATIONALS) -> VerticalData:
    p.require_two_components()
    kernel = boundary_kernel(p, field).basis
    parts = [p.split(v) for v in kernel]
    images, verticals, perp_ok = [], [], []
    for side in (0, 1):
        surface = p.components[side][0]
        n = surface.rank
        image = span_basis([pr[side] for pr in parts], n, field)
        vertical = vertical_subspace(p, side, field)
        complement = orthogonal_complement(image, surface.intersection_form(), field)
        ok = same_span(vertical, complement, n, field)
        # double complement must give the image back
        ok = ok and same_span(orthogonal_complement(complement, surface.intersection_form(), field), image, n, field)
        images.append(tuple(image))
        verticals.append(tuple(vertical))
        perp_ok.append(ok)
    return VerticalData(field, images[0], images[1], verticals[0], verticals[1], perp_ok[0], perp_ok[1])


def upsilon(p: BoundaryPresentation) -> int:
    """Rational dimension of ``ker ι_+``."""
    p.require_two_components()
    return len(vertical_subspace(p, 0, RATIONALS))
