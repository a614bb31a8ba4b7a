import math
from dataclasses import FrozenInstanceError
from datetime import timedelta

import pytest
from hypothesis import given, strategies as st

from uncertain_xes import (
    DETERMINATE,
    STRONG_INDETERMINATE,
    Certain,
    DensitySpec,
    StrongInterval,
    StrongSet,
    UncertainLog,
    UncertainTrace,
    WeakIndeterminate,
    WeakMap,
    errors,
    flavors,
    is_certain,
    is_strongly_uncertain,
    is_weakly_uncertain,
    make_event,
    trace_epoch,
    unchecked,
    uncertainty_stats,
)

from conftest import july


def test_sigma1_first_tuple():
    ev = make_event("e1", "ID192", StrongSet({"NightSweats"}), StrongInterval(july(5), july(5)),
                    STRONG_INDETERMINATE)
    assert ev.event_id == "e1"
    assert ev.case_id == "ID192"
    assert ev.activity.labels == {"NightSweats"}
    assert ev.timestamp == Certain(july(5))
    assert ev.indeterminacy == STRONG_INDETERMINATE


def test_sigma1_third_tuple():
    ev = make_event("e3", "ID192", StrongSet({"Splenomeg"}), StrongInterval(july(4), july(10)),
                    DETERMINATE)
    assert ev.timestamp.min == july(4) and ev.timestamp.max == july(10)
    assert ev.timestamp.width == timedelta(days=6)
    assert not ev.timestamp.is_certain


def test_certain_equals_degenerate_interval():
    t = july(7)
    assert Certain(t) == StrongInterval(t, t)
    assert hash(Certain(t)) == hash(StrongInterval(t, t))
    ev = make_event("x", "C", StrongSet({"A"}), Certain(t), DETERMINATE)
    assert ev.timestamp.is_certain
    assert is_certain(ev)


def test_weak_map_mass_exceeded():
    with pytest.raises(errors.ProbabilityMassExceeded):
        make_event("x", "C", WeakMap({"A": 0.7, "B": 0.5}), Certain(july(1)), DETERMINATE)


def test_mass_tolerance_is_1e9():
    WeakMap({"A": 0.5, "B": 0.5 + 0.5e-9})
    with pytest.raises(errors.ProbabilityMassExceeded):
        WeakMap({"A": 0.5, "B": 0.5 + 2e-9})


@pytest.mark.parametrize("p", [0.0, -0.1, 1.0000001, math.nan, math.inf])
def test_weak_map_probability_range(p):
    with pytest.raises(errors.ProbabilityOutOfRange):
        WeakMap({"A": p})


def test_weak_map_allows_probability_one_and_substochastic():
    assert WeakMap({"A": 1.0}).total == 1.0
    assert WeakMap({"A": 0.6}).total == pytest.approx(0.6)
    # a full-mass single entry is not collapsed into a strong set
    assert WeakMap({"A": 1.0}) != StrongSet({"A"})


def test_weak_map_equality_ignores_order():
    assert WeakMap([("A", 0.2), ("B", 0.3)]) == WeakMap([("B", 0.3), ("A", 0.2)])
    assert WeakMap([("A", 0.2), ("B", 0.3)]).support == ("A", "B")


def test_empty_and_duplicate_labels():
    with pytest.raises(errors.EmptyActivitySet):
        StrongSet([])
    with pytest.raises(errors.EmptyActivitySet):
        WeakMap({})
    with pytest.raises(errors.EmptyLabel):
        StrongSet([""])
    with pytest.raises(errors.DuplicateLabel):
        WeakMap([("A", 0.1), ("A", 0.2)])


def test_inverted_interval():
    with pytest.raises(errors.InvertedInterval):
        StrongInterval(july(10), july(4))


@pytest.mark.parametrize("build", [
    lambda: DensitySpec.gaussian(7, 0),
    lambda: DensitySpec.gaussian(7, -1),
    lambda: DensitySpec.uniform(10, 4),
    lambda: DensitySpec.uniform(4, 4),
    lambda: DensitySpec.gamma(0, 2),
    lambda: DensitySpec.gamma(3, -2),
    lambda: DensitySpec("GAUSSIAN", [("parameter_stddev", 1), ("parameter_mean", 7)]),
    lambda: DensitySpec("GAUSSIAN", [("parameter_mean", 7)]),
    lambda: DensitySpec("GAUSSIAN", [("parameter_mean", math.nan), ("parameter_stddev", 1)]),
])
def test_bad_density_params(build):
    with pytest.raises(errors.BadDensityParams):
        build()


def test_unknown_density():
    with pytest.raises(errors.UnknownDensityFunction):
        DensitySpec("CAUCHY", [("a", 1), ("b", 2)])


def test_density_examples_from_attribute_domain():
    # N(7,1), U(4,10), Gamma(3,2)
    assert DensitySpec.gaussian(7, 1).mean == 7
    assert DensitySpec.uniform(4, 10).mean == 7
    assert DensitySpec.gamma(3, 2).mean == 6
    assert DensitySpec.uniform(4, 10).params == (("parameter_low", 4), ("parameter_high", 10))


def test_weak_indeterminacy_range():
    WeakIndeterminate(0.25)
    WeakIndeterminate(1.0)
    with pytest.raises(errors.ProbabilityOutOfRange):
        WeakIndeterminate(0.0)


def test_event_id_required():
    with pytest.raises(errors.EmptyEventId):
        make_event("", "C", StrongSet({"A"}), Certain(july(1)))


def test_trace_invariants():
    a = make_event("x", "C", StrongSet({"A"}), Certain(july(1)))
    b = make_event("x", "C", StrongSet({"B"}), Certain(july(2)))
    with pytest.raises(errors.DuplicateEventId):
        UncertainTrace("C", [a, b])
    with pytest.raises(errors.CaseIdMismatch):
        UncertainTrace("D", [a])


def test_log_invariants():
    t1 = UncertainTrace("C1", [make_event("x", "C1", StrongSet({"A"}), Certain(july(1)))])
    t2 = UncertainTrace("C2", [make_event("x", "C2", StrongSet({"A"}), Certain(july(1)))])
    with pytest.raises(errors.DuplicateEventId):
        UncertainLog([t1, t2])
    with pytest.raises(errors.DuplicateCaseId):
        UncertainLog([t1, UncertainTrace("C1")])


def test_unchecked_builds_invalid_values_and_make_event_rechecks():
    with unchecked():
        bad = WeakMap({"A": 0.7, "B": 0.5})
    assert bad.total == pytest.approx(1.2)
    with pytest.raises(errors.ProbabilityMassExceeded):
        make_event("x", "C", bad, Certain(july(1)))


def test_values_are_frozen(sigma1):
    with pytest.raises(FrozenInstanceError):
        sigma1.events[0].event_id = "zzz"
    with pytest.raises(FrozenInstanceError):
        sigma1.case_id = "zzz"


@given(st.sets(st.sampled_from("ABCDE"), min_size=1), st.integers(0, 10), st.integers(0, 10))
def test_make_event_accessors_identity(labels, a, b):
    lo, hi = sorted((a, b))
    act = StrongSet(labels)
    ts = StrongInterval(july(1) + timedelta(hours=lo), july(1) + timedelta(hours=hi))
    ev = make_event("id", "case", act, ts, STRONG_INDETERMINATE)
    assert (ev.event_id, ev.case_id, ev.activity, ev.timestamp, ev.indeterminacy) == \
        ("id", "case", act, ts, STRONG_INDETERMINATE)
    assert ts.is_certain == (lo == hi)


# --------------------------------------------------------------------------
# flavors

def test_sigma1_e2_strong(sigma1):
    assert is_strongly_uncertain(sigma1.event("e2"))
    assert not is_weakly_uncertain(sigma1.event("e2"))


def test_sigma2_e6_weak(sigma2):
    e6 = sigma2.event("e6")
    assert is_weakly_uncertain(e6)
    assert not is_strongly_uncertain(e6)
    assert flavors(e6) == {"activity": None, "timestamp": "weak", "indeterminacy": None}


def test_certain_event_neither():
    ev = make_event("x", "C", StrongSet({"A"}), Certain(july(1)))
    assert not is_strongly_uncertain(ev) and not is_weakly_uncertain(ev)


def test_weak_flavor_edges():
    full = make_event("x", "C", WeakMap({"A": 1.0}), Certain(july(1)))
    partial = make_event("y", "C", WeakMap({"A": 0.9}), Certain(july(1)))
    assert not is_weakly_uncertain(full)
    assert is_weakly_uncertain(partial)


# --------------------------------------------------------------------------
# stats

def test_stats_sigma1(sigma1):
    s = uncertainty_stats(UncertainLog([sigma1]))
    assert s.n_events == 3 and s.n_traces == 1
    assert s.counts["strong_activity"] == 1
    assert s.counts["strong_timestamp"] == 1
    assert s.counts["strong_indeterminacy"] == 1
    assert s.weak_annotations == 0
    assert (s.activity_set_min, s.activity_set_max) == (1, 2)
    assert s.activity_set_mean == pytest.approx(4 / 3)
    assert s.interval_widths == [6.0]


def test_stats_empty_log():
    s = uncertainty_stats(UncertainLog())
    d = s.to_dict()
    assert d["n_events"] == 0 and d["n_traces"] == 0
    assert all(v == 0 for v in d["counts"].values())
    assert d["interval_width_days"]["count"] == 0


def test_stats_both_examples(both_examples_log):
    s = uncertainty_stats(both_examples_log)
    # by hand: one strong annotation per aspect in ID192, one weak per aspect in ID348
    assert s.n_events == 6
    assert s.strong_annotations == 3
    assert s.weak_annotations == 3
    assert s.counts["weak_timestamp"] == 1


# --------------------------------------------------------------------------
# day axis

def test_trace_epoch_default_and_override(sigma1, sigma2):
    assert trace_epoch(sigma1) == july(4, 0)
    assert trace_epoch(sigma2) == july(5, 0)
    assert trace_epoch(sigma2, july(1, 0)) == july(1, 0)
    only_density = UncertainTrace("ID348", [sigma2.event("e6")])
    assert trace_epoch(only_density).year == 1970
