import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from uncertain_xes import (
    POSSIBILISTIC,
    UNIFORM,
    Certain,
    RealizationShape,
    StrongInterval,
    StrongSet,
    UncertainTrace,
    WeakMap,
    enumerate_realizations,
    errors,
    make_event,
    realization_probability,
    sample_realizations,
    sum_check,
    weighted_realizations,
)
from uncertain_xes.export import realizations_to_log, write_csv
from uncertain_xes.realization import feasible_orders

from conftest import DAY_OF_MONTH_EPOCH, july
from oracles import brute_force_realizations, random_trace


def _as_set(shapes):
    return {(s.order, s.activities) for s in shapes}


# hand-derived from the interval lengths: e3 ~ U(Jul 4, Jul 10), six days,
# one before e1, three between e1 and e2, two after e2
SIGMA1 = {
    (("e3", "e1", "e2"), "PrTP"): Fraction(1, 24),
    (("e1", "e3", "e2"), "PrTP"): Fraction(1, 8),
    (("e1", "e2", "e3"), "PrTP"): Fraction(1, 12),
    (("e3", "e2"), "PrTP"): Fraction(1, 6),
    (("e2", "e3"), "PrTP"): Fraction(1, 12),
}


def _sigma1_expected():
    out = {}
    for (order, label), p in SIGMA1.items():
        for lab in ("PrTP", "SecTP"):
            acts = tuple({"e1": "NightSweats", "e2": lab, "e3": "Splenomeg"}[e] for e in order)
            out[(order, acts)] = p
    return out


def test_sigma1_has_ten_realizations(sigma1):
    shapes = enumerate_realizations(sigma1)
    assert len(shapes) == 10
    assert _as_set(shapes) == set(_sigma1_expected())
    assert _as_set(shapes) == brute_force_realizations(sigma1)


def test_sigma1_probabilities(sigma1):
    expected = _sigma1_expected()
    for shape, p in weighted_realizations(sigma1, UNIFORM):
        assert p == pytest.approx(float(expected[(shape.order, shape.activities)]), abs=1e-12)
    assert sum_check(sigma1) == pytest.approx(1.0, abs=1e-12)


def test_forced_orders():
    a = make_event("a", "C", StrongSet({"A"}), Certain(july(1)))
    b = make_event("b", "C", StrongSet({"B"}), StrongInterval(july(2), july(3)))
    c = make_event("c", "C", StrongSet({"C"}), Certain(july(4)))
    shapes = enumerate_realizations(UncertainTrace("C", [c, a, b]))
    assert _as_set(shapes) == {(("a", "b", "c"), ("A", "B", "C"))}


def test_equal_points_give_both_orders_but_one_has_weight():
    a = make_event("a", "C", StrongSet({"A"}), Certain(july(1)))
    b = make_event("b", "C", StrongSet({"B"}), Certain(july(1)))
    tr = UncertainTrace("C", [b, a])
    weights = {s.order: p for s, p in weighted_realizations(tr)}
    assert weights == {("b", "a"): 0.0, ("a", "b"): 1.0}
    assert {r.shape.order for r in sample_realizations(tr, 50, seed=1)} == {("a", "b")}


def test_feasible_orders_checks_greedily():
    items = [("x", 0, 10), ("y", 5, 5), ("z", 0, 4)]
    assert set(feasible_orders(items)) == {("z", "y", "x"), ("x", "z", "y"), ("z", "x", "y")}


def test_empty_trace():
    assert [s.order for s in enumerate_realizations(UncertainTrace("C"))] == [()]
    assert sum_check(UncertainTrace("C")) == 1.0


def test_refuses_densities_and_large_traces(sigma2):
    with pytest.raises(errors.ContinuousDensityPresent):
        enumerate_realizations(sigma2)
    big = random_trace(random.Random(0), 13)
    with pytest.raises(errors.TooManyEvents):
        enumerate_realizations(big)
    assert len(enumerate_realizations(random_trace(random.Random(0), 3), max_events=3)) > 0


@pytest.mark.parametrize("seed", range(40))
def test_matches_brute_force(seed):
    r = random.Random(seed)
    tr = random_trace(r, r.randint(0, 6), weak=seed % 2 == 0)
    assert _as_set(enumerate_realizations(tr)) == brute_force_realizations(tr)


@pytest.mark.parametrize("seed", range(30))
def test_normalized(seed):
    r = random.Random(1000 + seed)
    tr = random_trace(r, r.randint(1, 6), weak=True)
    assert sum_check(tr) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_substochastic_renormalized_or_refused(seed):
    r = random.Random(seed)
    tr = random_trace(r, 4, weak=True, stochastic=False)
    tr = UncertainTrace("C", list(tr.events) + [
        make_event("w", "C", WeakMap({"A": 0.3, "B": 0.3}), Certain(july(1)))])
    assert sum_check(tr) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(errors.SubStochasticMass):
        sum_check(tr, strict=True)


def test_mode_required(sigma1, sigma2):
    shape = enumerate_realizations(sigma1)[0]
    with pytest.raises(errors.ModeRequired):
        realization_probability(sigma1, shape)
    # weak-only traces need no mode
    est = realization_probability(sigma2, RealizationShape(("e4", "e5", "e6"),
                                  ("NightSweats", "PrTP", "Splenomeg")), epoch=DAY_OF_MONTH_EPOCH,
                                  n_mc=20_000)
    assert 0 < est.value < 1 and not est.exact


def test_possibilistic(sigma1):
    with pytest.raises(errors.ModeRequired):
        sum_check(sigma1, POSSIBILISTIC)
    a = make_event("a", "C", StrongSet({"A", "B"}), StrongInterval(july(1), july(3)))
    b = make_event("b", "C", StrongSet({"C"}), StrongInterval(july(2), july(4)))
    tr = UncertainTrace("C", [a, b])
    weights = [p for _, p in weighted_realizations(tr, POSSIBILISTIC)]
    assert weights and all(p == 1.0 for p in weights)


def test_unknown_mode(sigma1):
    with pytest.raises(ValueError):
        sum_check(sigma1, "fuzzy")


def test_weak_components_multiply(sigma2):
    # e6 has a density, so drop it to keep things exact
    tr = UncertainTrace("ID348", list(sigma2.events[:2]))
    probs = {(s.order, s.activities): p for s, p in weighted_realizations(tr)}
    assert probs[(("e4", "e5"), ("NightSweats", "PrTP"))] == pytest.approx(0.75 * 0.9)
    assert probs[(("e5",), ("SecTP",))] == pytest.approx(0.25 * 0.1)


# --------------------------------------------------------------------------
# sampling

def _sampling_matches(tr, n, seed):
    expected = {(s.order, s.activities): p for s, p in weighted_realizations(tr)}
    counts = Counter((r.shape.order, r.shape.activities) for r in sample_realizations(tr, n, seed))
    assert set(counts) <= {k for k, p in expected.items() if p > 0}
    for key, p in expected.items():
        se = math.sqrt(p * (1 - p) / n)
        assert abs(counts[key] / n - p) <= 4 * se + 1e-9, key


def test_sampling_frequencies_sigma1(sigma1):
    _sampling_matches(sigma1, 40_000, seed=3)


@pytest.mark.parametrize("seed", range(8))
def test_sampling_frequencies_random(seed):
    r = random.Random(500 + seed)
    _sampling_matches(random_trace(r, r.randint(1, 5), weak=True), 20_000, seed)


def test_sampling_is_deterministic(sigma2):
    a = sample_realizations(sigma2, 200, seed=11, epoch=DAY_OF_MONTH_EPOCH)
    b = sample_realizations(sigma2, 200, seed=11, epoch=DAY_OF_MONTH_EPOCH)
    c = sample_realizations(sigma2, 200, seed=12, epoch=DAY_OF_MONTH_EPOCH)
    assert a == b and a != c


def test_sampled_times_respect_bounds(sigma1):
    for r in sample_realizations(sigma1, 500, seed=0):
        times = [s.time for s in r.steps]
        assert times == sorted(times)
        e3 = [s for s in r.steps if s.event_id == "e3"][0]
        assert 0.5 <= e3.time <= 6.5


def test_sample_export(sigma1):
    import io
    rs = sample_realizations(sigma1, 3, seed=0)
    log = realizations_to_log([(sigma1, rs)])
    assert [t.case_id for t in log.traces] == ["ID192#1", "ID192#2", "ID192#3"]
    assert all(ev.timestamp.is_certain for t in log.traces for ev in t.events)
    buf = io.StringIO()
    write_csv([(sigma1, rs)], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "case_id,step_index,event_id,activity,timestamp,weight"
    assert len(lines) == 1 + sum(len(r.steps) for r in rs)


def test_sample_rejects_bad_n(sigma1):
    with pytest.raises(ValueError):
        sample_realizations(sigma1, 0, seed=0)
