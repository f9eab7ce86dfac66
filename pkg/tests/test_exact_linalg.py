import pytest
from hypothesis import given, settings, strategies as st

from hierkit.exact_linalg import (
    AbelianGroupStructure,
    IntegerMatrix,
    cokernel,
    content,
    element_order,
    kernel_basis,
    nullspace,
    rank_mod_p,
    rank_over,
    saturate,
    smith_normal_form,
)

from oracles import det_by_permutations, determinantal_divisors, rank_fraction, smith_diagonal_oracle


def matrices(max_dim=4, bound=6):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows, c=c: IntegerMatrix.from_rows(rows, c))
        )
    )


# -- examples -----------------------------------------------------------------


def test_snf_identity():
    d = smith_normal_form(IntegerMatrix.identity(2))
    assert d.diagonal == (1, 1)
    assert d.left == IntegerMatrix.identity(2)
    assert d.right == IntegerMatrix.identity(2)


def test_snf_zero():
    assert smith_normal_form(IntegerMatrix.from_rows([[0]])).diagonal == (0,)


def test_snf_2x2_against_determinantal_divisors():
    rows = [[2, 4], [6, 8]]
    assert smith_diagonal_oracle(rows, 2) == [2, 4]  # oracle first
    assert smith_normal_form(IntegerMatrix.from_rows(rows)).diagonal == (2, 4)


def test_kernel_examples():
    assert kernel_basis(IntegerMatrix.from_rows([[1, 1]])) in ([(1, -1)], [(-1, 1)])
    k = kernel_basis(IntegerMatrix.from_rows([[2, 4]]))
    assert len(k) == 1 and k[0] in ((2, -1), (-2, 1))
    assert kernel_basis(IntegerMatrix.identity(3)) == []


def test_cokernel_examples():
    assert cokernel(IntegerMatrix.diagonal([2, 3])) == AbelianGroupStructure(0, (6,))
    assert cokernel(IntegerMatrix.from_rows([[0]])) == AbelianGroupStructure(1, ())
    assert cokernel(IntegerMatrix.from_rows([[1]])).is_trivial


def test_cyclic_orders_normalise():
    assert AbelianGroupStructure.from_cyclic_orders(0, [2, 3]).torsion_coefficients == (6,)
    assert AbelianGroupStructure.from_cyclic_orders(1, [2, 4, 1]).torsion_coefficients == (2, 4)
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (4, 2))


def test_content_examples():
    assert content((2, 4, 6)) == 2
    assert content((0, 0)) == 0
    assert content((3, 5)) == 1


def test_rank_mod_p_examples():
    assert rank_mod_p(IntegerMatrix.from_rows([[2, 4], [6, 8]]), 2) == 0
    assert rank_mod_p(IntegerMatrix.identity(3), 5) == 3
    assert rank_mod_p(IntegerMatrix.from_rows([[3]]), 3) == 0
    with pytest.raises(ValueError):
        rank_mod_p(IntegerMatrix.identity(2), 4)


def test_element_order():
    rel = IntegerMatrix.from_rows([[4], [0]])
    assert element_order(rel, (2, 0)) == 2
    assert element_order(rel, (1, 0)) == 4
    assert element_order(rel, (0, 1)) is None


def test_big_integers_stay_exact():
    big = 10**40 + 7
    d = smith_normal_form(IntegerMatrix.from_rows([[big, 0], [0, big * 3]]))
    assert d.diagonal == (big, 3 * big)


def test_mod_p_nullspace_of_signed_product():
    # [I | -I] mod 2 has the diagonal as kernel
    m = IntegerMatrix.from_rows([[1, 0, -1, 0], [0, 1, 0, -1]])
    k = nullspace(m, 2)
    assert sorted(k) == [(0, 1, 0, 1), (1, 0, 1, 0)]


# -- properties ---------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_reconstructs(m):
    d = smith_normal_form(m)
    assert d.left @ m @ d.right == d.diagonal_matrix()
    if m.nrows:
        assert abs(d.left.determinant()) == 1
    if m.ncols:
        assert abs(d.right.determinant()) == 1
    nz = [x for x in d.diagonal]
    assert all(x >= 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1) if nz[i])


@settings(max_examples=80, deadline=None)
@given(matrices(max_dim=3, bound=5))
def test_snf_matches_determinantal_divisors(m):
    oracle = smith_diagonal_oracle(m.rows, m.ncols)
    assert list(smith_normal_form(m).diagonal) == oracle


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_permutation_expansion(rows):
    assert IntegerMatrix.from_rows(rows).determinant() == det_by_permutations(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_saturated_basis(m):
    k = kernel_basis(m)
    assert len(k) == m.ncols - rank_fraction(m.rows, m.ncols)
    for v in k:
        assert content(v) == 1
        assert not any(m.apply(v))
    if k:
        # direct summand: the kernel basis extends to Z^n iff its gcd of maximal minors is 1
        assert determinantal_divisors([list(v) for v in k], m.ncols)[-1] == 1
    # scaling the basis and re-saturating gives the same canonical basis back
    assert saturate([tuple(3 * x for x in v) for v in k], m.ncols) == k


@settings(max_examples=150, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_ranks_agree_with_smith_diagonal(m, p):
    d = smith_normal_form(m).diagonal
    assert rank_over(m.rows, m.ncols, 0) == sum(1 for x in d if x) == rank_fraction(m.rows, m.ncols)
    assert rank_mod_p(m, p) == sum(1 for x in d if x % p) == rank_fraction(m.rows, m.ncols, p)


@given(st.lists(st.integers(-1000, 1000), max_size=6), st.integers(-50, 50))
def test_content_homogeneous(v, k):
    assert content([k * x for x in v]) == abs(k) * content(v)


def test_snf_is_deterministic():
    m = IntegerMatrix.from_rows([[6, 4, 2], [3, 9, 12], [0, 5, 10]])
    assert smith_normal_form(m) == smith_normal_form(m)
