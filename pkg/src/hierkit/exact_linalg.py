"""Exact integer and prime-field linear algebra.

Everything here works on Python ints (arbitrary precision) or on
:class:`fractions.Fraction`; nothing is ever rounded.  Fields are tagged by
their characteristic: ``0`` is the rationals, a prime ``p`` is ``Z/pZ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[int, ...]

RATIONALS = 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` in increasing order."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def check_field(field: int) -> int:
    if field != RATIONALS and not is_prime(field):
        raise ValueError(f"field characteristic must be 0 or a prime, got {field}")
    return field


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable matrix of Python ints, stored row-major.

    ``ncols`` is kept explicitly so that matrices with zero rows still know
    their width.
    """

    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("dimensions must be nonnegative")
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("row data does not match the declared shape")
        for r in self.rows:
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be ints, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntegerMatrix":
        return cls.from_rows(([c[i] for c in cols] for i in range(nrows)), ncols=len(cols))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> "IntegerMatrix":
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        rows = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls.from_rows(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(self.columns(), ncols=self.nrows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntegerMatrix.from_rows(
            ([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows),
            ncols=other.ncols,
        )

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} does not fit {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def scale(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(([k * x for x in r] for r in self.rows), self.ncols)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return IntegerMatrix.from_rows((a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return IntegerMatrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(([self.rows[i][j] for j in cols] for i in rows), len(cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ original @ right`` is the diagonal matrix with ``diagonal``."""

    left: IntegerMatrix
    diagonal: tuple[int, ...]
    right: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def diagonal_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.diagonal(self.diagonal, self.left.nrows, self.right.ncols)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank`` plus cyclic torsion factors in divisibility order."""

    free_rank: int
    torsion_coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = self.torsion_coefficients
        if any(d <= 1 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion coefficients {t} are not an invariant-factor list")

    @classmethod
    def from_cyclic_orders(cls, free_rank: int, orders: Iterable[int]) -> "AbelianGroupStructure":
        """Normalise an arbitrary list of cyclic orders (e.g. ``[2, 3]`` becomes ``[6]``)."""
        orders = [o for o in orders if o != 1]
        if any(o <= 0 for o in orders):
            raise ValueError("cyclic orders must be positive")
        d = smith_normal_form(IntegerMatrix.diagonal(orders)).diagonal
        return cls(free_rank, tuple(x for x in d if x > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_coefficients

    @property
    def torsion_primes(self) -> list[int]:
        return sorted({q for d in self.torsion_coefficients for q in prime_factors(d)})

    def direct_sum(self, other: "AbelianGroupStructure") -> "AbelianGroupStructure":
        return AbelianGroupStructure.from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion_coefficients + other.torsion_coefficients,
        )

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion_coefficients]
        return " + ".join(parts) or "0"


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivot choice is the nonzero entry of smallest absolute value in the
    remaining block, ties broken row-major, so the output is deterministic.
    """
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    left = [[int(i == j) for j in range(nr)] for i in range(nr)]
    right = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in right:
                r[dst] += k * r[src]

    diag = []
    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, nr):
                add_row(t, i, -(a[i][t] // p))
            for j in range(t + 1, nc):
                add_col(t, j, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue  # remainders left; a smaller pivot now exists
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t >= nr or t >= nc or pivot is None:
            diag.extend([0] * (min(nr, nc) - t))
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        diag.append(a[t][t])
    return SmithDecomposition(
        IntegerMatrix.from_rows(left, nr),
        tuple(diag),
        IntegerMatrix.from_rows(right, nc),
    )


def content(v: Iterable[int]) -> int:
    """gcd of the entries; 0 for the zero vector."""
    return math.gcd(*v)


def primitive_part(v: Sequence[int]) -> Vector:
    c = content(v)
    return tuple(v) if c == 0 else tuple(x // c for x in v)


def hermite_rows(vectors: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.  Zero rows are dropped, so the result is a canonical basis.
    """
    rows = [list(v) for v in vectors if any(v)]
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            for r in active[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            active = [r for r in active if r[col]]
        piv = active[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        rows = [r for r in rows if r is not piv and any(r)]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
        out.append(piv)
        col += 1
    return [tuple(r) for r in out]


def kernel_basis(m: IntegerMatrix) -> list[Vector]:
    """Basis of the integer kernel ``{v : m v = 0}``.

    The kernel read off a Smith decomposition is already a direct summand;
    the basis is then put in Hermite form and each vector divided by its
    content so the output is canonical.
    """
    snf = smith_normal_form(m)
    r = snf.rank
    vecs = [snf.right.column(j) for j in range(r, m.ncols)]
    return [primitive_part(v) for v in hermite_rows(vecs, m.ncols)]


def saturate(vectors: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Basis of ``span_Q(vectors) ∩ Z^n``."""
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return []
    annihilator = kernel_basis(IntegerMatrix.from_rows(vecs, n))
    if not annihilator:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return kernel_basis(IntegerMatrix.from_rows(annihilator, n))


def cokernel(m: IntegerMatrix) -> AbelianGroupStructure:
    """Structure of ``Z^nrows / im(m)``."""
    snf = smith_normal_form(m)
    return AbelianGroupStructure(
        m.nrows - snf.rank,
        tuple(d for d in snf.diagonal if d > 1),
    )


def element_order(relations: IntegerMatrix, v: Sequence[int]) -> int | None:
    """Order of ``v`` in ``Z^n / im(relations)``; ``None`` when infinite."""
    snf = smith_normal_form(relations)
    w = snf.left.apply(v)
    order = 1
    for i, x in enumerate(w):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if x:
                return None
        else:
            order = math.lcm(order, d // math.gcd(d, x))
    return order


# ---------------------------------------------------------------------------
# field linear algebra (characteristic 0 via Fraction, or Z/p)


def _normalise(x, field: int):
    return Fraction(x) if field == RATIONALS else x % field


def _inverse(x, field: int):
    return 1 / x if field == RATIONALS else pow(x, -1, field)


def rref(rows: Sequence[Sequence[int]], ncols: int, field: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the field; returns (nonzero rows, pivot columns)."""
    a = [[_normalise(x, field) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = _inverse(a[r][c], field)
        a[r] = [_normalise(x * inv, field) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [_normalise(x - f * y, field) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_over(rows: Sequence[Sequence[int]], ncols: int, field: int) -> int:
    return len(rref(rows, ncols, field)[1])


def rank_mod_p(m: IntegerMatrix, p: int) -> int:
    """Rank of ``m`` over the field with ``p`` elements."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return rank_over(m.rows, m.ncols, p)


def _integral(row) -> Vector:
    """Scale a Fraction row to a primitive integer row (sign preserved)."""
    den = math.lcm(*(x.denominator for x in row)) if row else 1
    return primitive_part([int(x * den) for x in row])


def nullspace(m: IntegerMatrix, field: int) -> list[Vector]:
    """Kernel basis of ``m`` over the field.

    Over the rationals this is the saturated integer kernel.  Over ``Z/p`` the
    vectors are the standard RREF free-variable basis with entries in ``[0, p)``.
    """
    check_field(field)
    if field == RATIONALS:
        return kernel_basis(m)
    red, pivots = rref(m.rows, m.ncols, field)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % field
        basis.append(tuple(v))
    return basis


def span_basis(vectors: Sequence[Sequence[int]], n: int, field: int) -> list[Vector]:
    """Canonical basis of the span: RREF rows (made integral over the rationals)."""
    red, _ = rref(vectors, n, field)
    if field == RATIONALS:
        return [_integral(r) for r in red]
    return [tuple(r) for r in red]


def in_span(basis: Sequence[Sequence[int]], v: Sequence[int], n: int, field: int) -> bool:
    return rank_over(list(basis) + [v], n, field) == rank_over(basis, n, field)


def same_span(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], n: int, field: int) -> bool:
    ra = rank_over(a, n, field)
    return ra == rank_over(b, n, field) == rank_over(list(a) + list(b), n, field)


def bilinear(u: Sequence[int], form: IntegerMatrix, v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, form.apply(v)))


def orthogonal_complement(
    basis: Sequence[Sequence[int]], form: IntegerMatrix, field: int
) -> list[Vector]:
    """``{x : form(v, x) = 0 for all v in basis}`` over the field."""
    n = form.nrows
    if not basis:
        return nullspace(IntegerMatrix.zeros(0, n), field)
    ft = form.transpose()
    rows = [ft.apply(v) for v in basis]  # row v^T F
    return nullspace(IntegerMatrix.from_rows(rows, n), field)
