import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hierkit.exact_linalg import AbelianGroupStructure, IntegerMatrix
from hierkit.floer_simplicity import (
    InvalidInputError,
    KnotRankTable,
    SpincRankTable,
    basic_classes_from_ranks,
    bundle_unknot_obstruction,
    check_extreme_classes,
    check_norm_restriction,
    is_bottommostly_simple,
    is_floer_simple,
    synthetic_fibered_table,
    tower_homology,
)
from hierkit.generators import fibered_knot_pairings
from hierkit.norm_calculus import NormOracle

FIBERED = NormOracle.symmetric(1, [(2,)])
ONE = IntegerMatrix.identity(1)


def knot(entries, pullback=ONE, mp=None):
    return KnotRankTable(entries, pullback, mp)


def test_basic_classes_from_ranks():
    assert basic_classes_from_ranks(SpincRankTable({(-2,): 1, (2,): 1})).sorted() == [(-2,), (2,)]
    assert len(basic_classes_from_ranks(SpincRankTable({}))) == 0
    g = 2
    bundle = SpincRankTable({(2 - 2 * g,): 1, (2 * g - 2,): 1})
    assert basic_classes_from_ranks(bundle).sorted() == [(-2,), (2,)]


def test_zero_ranks_are_dropped():
    assert SpincRankTable({(1,): 0, (2,): 3}).support == [(2,)]
    with pytest.raises(InvalidInputError):
        SpincRankTable({(1,): -1})


def test_floer_simple_examples():
    t = SpincRankTable({(-2,): 1, (2,): 1})
    assert is_floer_simple(knot({(-2,): 1, (2,): 1}), t)
    trefoil_like = knot({(-1,): 1, (0,): 1, (1,): 1}, IntegerMatrix.zeros(1, 1))
    assert not is_floer_simple(trefoil_like, SpincRankTable({(0,): 1}))
    with pytest.raises(InvalidInputError):
        is_floer_simple(knot({(-2,): 1}), t)


def test_bottommost_simple_examples():
    t = SpincRankTable({(-2,): 1, (2,): 1})
    pull = IntegerMatrix.from_rows([[1, 0]])
    assert is_bottommostly_simple(KnotRankTable({(-2, 0): 1, (2, 0): 1, (2, 1): 5}, pull), t, FIBERED, (1,))
    assert not is_bottommostly_simple(KnotRankTable({(-2, 0): 2, (2, 0): 1}, pull), t, FIBERED, (1,))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_bottommost_at_zero_is_floer_simple(seed):
    rng = random.Random(seed)
    classes = [(c,) for c in range(-3, 4)]
    amb = {c: rng.randint(0, 2) for c in classes}
    kn = {(c[0], e): 0 for c in classes for e in (0, 1)}
    for c in classes:
        extra = rng.choice([0, 0, 1, 2])
        kn[(c[0], 0)] = amb[c] + extra
    pull = IntegerMatrix.from_rows([[1, 0]])
    k, t = KnotRankTable(kn, pull), SpincRankTable(amb)
    assert is_bottommostly_simple(k, t, FIBERED, (0,)) == is_floer_simple(k, t)


def test_extreme_class_examples():
    rep = check_extreme_classes(knot({(-1,): 1, (1,): 1, (3,): 1}, mp=1), (1,), 1)
    assert (rep.minimum, rep.maximum, rep.min_ok, rep.max_ok) == (-1, 3, True, True)
    single = check_extreme_classes(knot({(1,): 1}, mp=1), (1,), 0)
    assert (single.expected_minimum, single.expected_maximum) == (0, 2)
    assert not single.min_ok and not single.max_ok
    assert check_extreme_classes(knot({(0,): 1, (2,): 1}, mp=1), (1,), 0).ok
    assert check_extreme_classes(knot({(-2,): 1, (4,): 1}, mp=1), (1,), 2).ok


def test_extreme_class_errors():
    with pytest.raises(InvalidInputError):
        check_extreme_classes(knot({}, mp=1), (1,), 0)
    with pytest.raises(InvalidInputError):
        check_extreme_classes(knot({(0,): 1}), (1,), 0)


@pytest.mark.parametrize("chi_f", range(6))
@pytest.mark.parametrize("mp", [1, 2, 3])
def test_synthetic_fibered_tables_pass(chi_f, mp):
    t = synthetic_fibered_table(chi_f, mp)
    assert sorted(v for (v,) in t.support) == fibered_knot_pairings(chi_f, mp)
    assert check_extreme_classes(t, (1,), chi_f).ok


def test_norm_restriction():
    assert check_norm_restriction(FIBERED, FIBERED, (3,))
    assert not check_norm_restriction(FIBERED, NormOracle.symmetric(1, [(4,)]), (1,))
    unknot_complement = NormOracle.symmetric(1, [(2,)])
    assert check_norm_restriction(FIBERED, unknot_complement, (1,))


# -- tower -------------------------------------------------------------------


def test_tower_u():
    r = tower_homology([1], 5)
    assert (r.kernel_rank, r.cokernel_structure.is_trivial, r.hfplus_is_Z, r.stable) == (1, True, True, True)


def test_tower_u_squared():
    r = tower_homology([0, 1], 5)
    assert r.kernel_rank == 2 and r.homology == AbelianGroupStructure(2) and not r.hfplus_is_Z


def test_tower_2u():
    r = tower_homology([2], 5)
    assert r.kernel_rank == 1
    assert r.cokernel_structure == AbelianGroupStructure(0, (2,) * 5)
    assert not r.stable and not r.hfplus_is_Z
    # the Z/2 part keeps growing with depth
    assert tower_homology([2], 7).cokernel_structure.torsion_coefficients == (2,) * 7


def test_tower_u_plus_u3():
    r = tower_homology([1, 0, 1], 6)
    assert (r.kernel_rank, r.cokernel_structure.is_trivial, r.hfplus_is_Z) == (1, True, True)


def test_tower_rejects_constant_term_and_bad_depth():
    with pytest.raises(InvalidInputError):
        tower_homology([1], 5, constant_term=1)
    with pytest.raises(InvalidInputError):
        tower_homology([1], 0)


def test_tower_zero_polynomial():
    r = tower_homology([], 3)
    assert r.homology.free_rank == 6 and not r.hfplus_is_Z


def _all_f(max_deg=3):
    for deg in range(1, max_deg + 1):
        for cs in itertools.product(range(-2, 3), repeat=deg):
            if cs[-1]:
                yield deg, cs


@pytest.mark.parametrize("deg,f", list(_all_f()))
def test_tower_sweep_unit_coefficient(deg, f):
    assert tower_homology(f, deg + 2).hfplus_is_Z == (abs(f[0]) == 1)


@pytest.mark.parametrize("f", [cs for _, cs in _all_f() if abs(cs[0]) == 1])
def test_tower_stable_reports_for_unit_coefficient(f):
    deg = len(f)
    reports = [tower_homology(f, d) for d in range(deg + 1, deg + 5)]
    assert all(r.stable for r in reports)
    assert len({(r.kernel_rank, r.cokernel_structure) for r in reports}) == 1


# -- bundle obstruction ------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 11))
def test_bundle_genus2_contradiction(n):
    v = bundle_unknot_obstruction(2, n, 2 * n + 1, 2 * n + 1, 4 * n)
    assert (v.lhs, v.required, v.bound) == (-4 * n - 4, -4 * n, -4 * n - 2)
    assert v.verdict == "CONTRADICTION" and v.subadditive


@pytest.mark.parametrize("n", range(1, 11))
def test_bundle_disk_escape_consistent(n):
    chi_g = 2
    v = bundle_unknot_obstruction(chi_g, n, n * chi_g, n * chi_g, 2 * n * chi_g, meridian_term=False)
    assert v.verdict == "CONSISTENT" and v.chain_consistent


def test_bundle_rejects_bad_fibre():
    with pytest.raises(InvalidInputError):
        bundle_unknot_obstruction(0, 1, 0, 0, 0)
    with pytest.raises(InvalidInputError):
        bundle_unknot_obstruction(3, 1, 0, 0, 0)
