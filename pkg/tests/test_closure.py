import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spanner1d as sp
from spanner1d.closure import compute_closure, half_threshold, within_spec_bound


def test_half_threshold_rounds_up():
    assert [half_threshold(s) for s in range(1, 8)] == [1, 1, 2, 2, 3, 3, 4]


def test_empty_failures_stay_empty():
    for n, ell in [(16, 1), (216, 2), (8, 1)]:
        trace = compute_closure(sp.build_scheme(n, ell), frozenset())
        assert trace.f_star == frozenset()
        assert trace.triggered == ()


def test_complete_mode_adds_nothing():
    trace = compute_closure(sp.build_scheme(10, 1), frozenset({2, 5}))
    assert trace.f_star == frozenset({2, 5})
    assert len(trace.per_layer) == 2
    assert trace.triggered == ()


def test_single_failure_golden():
    """One failure in a size-2 half drags in both owning clusters, nothing more.

    The additions {0..5} would re-trigger further halves if they fed back
    into the same layer; the snapshot rule stops exactly here.
    """
    trace = compute_closure(sp.build_scheme(16, 1), frozenset({3}))
    assert trace.f_star == frozenset(range(6))
    assert len(trace.triggered) == 1
    ev = trace.triggered[0]
    assert (ev.half.lo, ev.half.hi) == (2, 4)
    assert [(c.lo, c.hi) for c in ev.clusters] == [(0, 4), (2, 6)]
    assert ev.added == frozenset(range(6))


def test_two_failures_golden():
    trace = compute_closure(sp.build_scheme(16, 1), frozenset({3, 7}))
    assert trace.f_star == frozenset(range(10))


def test_below_threshold_is_inert():
    # halves of size 7 need four failures to trigger
    scheme = sp.build_scheme(196, 1)
    fs = frozenset({10, 11, 12})
    trace = compute_closure(scheme, fs)
    assert trace.f_star == fs


def test_cascade_reaches_higher_layer():
    scheme = sp.build_scheme(64, 2)
    trace = compute_closure(scheme, frozenset({0, 1}))
    layers_hit = {ev.layer for ev in trace.triggered}
    assert layers_hit == {1, 2}
    assert trace.per_layer[0] < trace.per_layer[1] < trace.per_layer[2]


def test_failures_out_of_range():
    with pytest.raises(sp.IndexOutOfRange):
        compute_closure(sp.build_scheme(16, 1), frozenset({16}))


def test_spec_bound_met_with_equality():
    # worst single-failure growth: 1 -> 6 at depth 1
    trace = compute_closure(sp.build_scheme(16, 1), frozenset({3}))
    assert len(trace.f_star) == 6 * 1
    assert within_spec_bound(trace)
    assert sp.closure_bound_check(trace)


def test_bound_checker_detects_tail_blowup():
    """A lone failure in a size-1 trailing half exceeds the 6x budget.

    This layout anomaly is exactly what the checker exists to catch: the
    rule is applied verbatim and the bound is reported, not enforced.
    """
    trace = compute_closure(sp.build_scheme(145, 1), frozenset({144}))
    assert trace.f_star == frozenset(range(138, 145))
    assert not within_spec_bound(trace)
    assert not sp.closure_bound_check(trace)


def test_bound_checker_detects_deep_tail_blowup():
    trace = compute_closure(sp.build_scheme(1001, 2), frozenset({1000}))
    assert len(trace.f_star) == 51
    assert not within_spec_bound(trace)


def test_ignored_set_view():
    trace = compute_closure(sp.build_scheme(16, 1), frozenset({3}))
    ig = trace.ignored_set()
    assert ig.members == trace.f_star
    assert ig.source_failures == frozenset({3})


def test_trace_json():
    trace = compute_closure(sp.build_scheme(16, 1), frozenset({3}))
    doc = json.loads(sp.trace_to_json(trace))
    assert doc["f_star"] == list(range(6))
    assert len(doc["layers"]) == 1
    assert doc["layers"][0]["f_size"] == 6
    added = doc["layers"][0]["added_clusters"]
    assert [(c["lo"], c["hi"]) for c in added] == [(0, 4), (2, 6)]


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=400),
    st.integers(min_value=1, max_value=3),
    st.data(),
)
def test_closure_monotone_property(n, ell, data):
    scheme = sp.build_scheme(n, ell)
    fs = frozenset(
        data.draw(
            st.sets(st.integers(min_value=0, max_value=n - 1), max_size=min(n, 12))
        )
    )
    trace = compute_closure(scheme, fs)
    assert trace.failures == fs
    assert len(trace.per_layer) == ell + 1
    for a, b in zip(trace.per_layer, trace.per_layer[1:]):
        assert a <= b
    assert fs <= trace.f_star
    # the stricter per-layer check never passes when the total bound fails
    if sp.closure_bound_check(trace):
        assert within_spec_bound(trace)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_closure_additions_are_triggered_clusters(data):
    n, ell = 100, 2
    scheme = sp.build_scheme(n, ell)
    fs = frozenset(
        data.draw(st.sets(st.integers(min_value=0, max_value=n - 1), max_size=10))
    )
    trace = compute_closure(scheme, fs)
    rebuilt = set(fs)
    for ev in trace.triggered:
        rebuilt |= ev.added
    assert frozenset(rebuilt) == trace.f_star
