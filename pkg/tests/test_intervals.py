import math

from hypothesis import given, strategies as st

from freezeflow import IntervalUnion

INF = math.inf


def test_normalization_merges_touching():
    iu = IntervalUnion([(0, 1), (1, 2), (3, 4)])
    assert iu.intervals == ((0, 1 + 1), (3, 4))


def test_singletons_kept_unless_absorbed():
    iu = IntervalUnion([(0.5, 0.5), (1, 2), (2, 2)])
    assert iu.intervals == ((0.5, 0.5), (1, 2))


def test_measure_and_tails():
    iu = IntervalUnion([(-INF, 0), (2, 5)])
    assert iu.measure() == INF
    assert iu.has_lower_tail() and not iu.has_upper_tail()
    assert iu.clip(-10, 10).measure() == 13


def test_intersect_and_complement():
    a = IntervalUnion([(0, 2), (4, 6)])
    b = IntervalUnion([(1, 5)])
    assert a.intersect(b).intervals == ((1, 2), (4, 5))
    assert a.complement_within(0, 6).intervals == ((2, 4),)


def test_symmetric_difference():
    a = IntervalUnion([(0, 2), (4, 6)])
    b = IntervalUnion([(0, 1), (4, 6.5)])
    assert abs(a.symmetric_difference_measure(b) - 1.5) < 1e-12
    assert a.symmetric_difference_measure(a) == 0.0
    c = IntervalUnion([(0, INF)])
    assert a.symmetric_difference_measure(c) == INF


def test_reflect_translate_contains():
    a = IntervalUnion([(1, 2), (3, INF)])
    assert a.reflect().intervals == ((-INF, -3), (-2, -1))
    assert a.translate(1.0).intervals == ((2, 3), (4, INF))
    assert a.contains(1.5) and not a.contains(2.5) and a.contains(100.0)


finite = st.floats(min_value=-50, max_value=50, allow_nan=False)


@given(st.lists(st.tuples(finite, finite), max_size=8), st.lists(st.tuples(finite, finite), max_size=8))
def test_union_measure_bounds(pairs_a, pairs_b):
    a = IntervalUnion([(min(p), max(p)) for p in pairs_a])
    b = IntervalUnion([(min(p), max(p)) for p in pairs_b])
    u = a.union(b)
    assert u.measure() <= a.measure() + b.measure() + 1e-9
    assert u.measure() >= max(a.measure(), b.measure()) - 1e-9
    # normalization is idempotent
    assert IntervalUnion(u.intervals).intervals == u.intervals


@given(st.lists(st.tuples(finite, finite), max_size=8))
def test_complement_partitions_window(pairs):
    a = IntervalUnion([(min(p), max(p)) for p in pairs])
    inside = a.clip(-60, 60)
    outside = a.complement_within(-60, 60)
    assert abs(inside.measure() + outside.measure() - 120.0) < 1e-9
