import random

import pytest
from hypothesis import given, settings, strategies as st

from hierkit.norm_calculus import BasicClassSet
from hierkit.surface_calculus import (
    AnnulusType,
    SurfaceClass,
    classify_annulus,
    cut_paste_class,
    lower_sub_threshold,
    verify_lower_sub,
)


def test_annulus_examples():
    assert classify_annulus((1, 0), (0, 1)) is AnnulusType.NN
    assert classify_annulus((1, 0), (0, 0)) is AnnulusType.NS
    assert classify_annulus((0, 0), (0, 3)) is AnnulusType.SN
    assert classify_annulus((0, 0), (0, 0)) is AnnulusType.SS


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_annulus_depends_only_on_vanishing(a, b):
    t = classify_annulus(a, b)
    assert t == classify_annulus([2 * x for x in a], [5 * x for x in b])
    assert t.value[0] == ("N" if any(a) else "S")


def test_cut_paste_examples():
    s = SurfaceClass((1, 0), -2, {(1,): 1})
    g = SurfaceClass((0, 1), -2, {(1,): -2})
    assert cut_paste_class(s, g, 0) == s
    assert cut_paste_class(s, g, 3).euler == -8
    assert cut_paste_class(s, g, 4).pair((1,)) == -7
    assert cut_paste_class(s, g, 3).euler_neg == 8


@given(st.integers(0, 10), st.integers(0, 10), st.integers(-6, 2), st.integers(-6, 2))
def test_cut_paste_is_additive_in_m(m1, m2, es, eg):
    s = SurfaceClass((1, 2), es, {(1, 0): 3})
    g = SurfaceClass((0, 1), eg, {(1, 0): -1})
    assert cut_paste_class(s, g, m1 + m2) == cut_paste_class(cut_paste_class(s, g, m1), g, m2)


def test_threshold_examples():
    B = BasicClassSet.of([(1,), (2,)])
    s = SurfaceClass((0,), -2, {(1,): -1, (2,): 3})
    assert lower_sub_threshold(B, s) == 6
    assert lower_sub_threshold(BasicClassSet.of([]), s) == 1
    assert lower_sub_threshold(BasicClassSet.of([(1,)]), SurfaceClass((0,), -2, {(1,): -2})) == 1
    with pytest.raises(KeyError):
        lower_sub_threshold(BasicClassSet.of([(9,)]), s)


def test_threshold_from_dot_product():
    s = SurfaceClass((1, 1), -2)
    assert lower_sub_threshold(BasicClassSet.of([(2, 0)]), s) == 1 + abs(2 + 2)


def test_counterexample_below_threshold():
    B = BasicClassSet.of([(1,)])
    s = SurfaceClass((0,), -2, {(1,): -10})
    g = SurfaceClass((1,), -2, {(1,): -1})
    assert lower_sub_threshold(B, s) == 9
    assert all(not verify_lower_sub(B, s, g, m) for m in range(1, 9))
    assert all(verify_lower_sub(B, s, g, m) for m in range(9, 30))


def test_empty_b_passes():
    s = SurfaceClass((0,), -2, {})
    assert verify_lower_sub(BasicClassSet.of([]), s, SurfaceClass((1,), -2, {}), 1)


def random_surface_instance(rng):
    classes = [(i,) for i in range(rng.randint(0, 6))]
    s = SurfaceClass((0,), rng.randint(-8, 0), {a: rng.randint(-12, 12) for a in classes})
    g = SurfaceClass((1,), rng.randint(-8, 0), {a: rng.randint(-12, 12) for a in classes})
    return BasicClassSet.of(classes), s, g


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_lower_sub_holds_past_threshold(seed):
    B, s, g = random_surface_instance(random.Random(seed))
    m0 = lower_sub_threshold(B, s)
    for m in range(m0, m0 + 21):
        assert verify_lower_sub(B, s, g, m)
