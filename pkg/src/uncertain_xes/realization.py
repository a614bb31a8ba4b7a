"""Concrete traces an uncertain trace can stand for: enumeration, weights, sampling.

A realization picks which indeterminate events happened, one activity label
per included event, and an order of the included events compatible with their
timestamps. Strong attributes carry no probability of their own, so weighing
or sampling them needs a ``mode``:

``uniform``
    strong sets and intervals are uniform, strong indeterminacy is a fair coin.
``possibilistic``
    every option of a strong attribute weighs 1; strong indeterminacy cannot
    be weighed and raises :class:`~uncertain_xes.errors.ModeRequired`.

Events are assumed independent of each other, and so are the three aspects of
one event.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from datetime import datetime
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from . import errors
from .model import (
    EPSILON,
    Determinate,
    StrongIndeterminate,
    StrongInterval,
    StrongSet,
    UncertainTrace,
    WeakDensity,
    WeakIndeterminate,
    WeakMap,
    interval_days,
    is_strongly_uncertain,
    trace_epoch,
)
from .orderprob import chain_probability
from .rng import substream

UNIFORM = "uniform"
POSSIBILISTIC = "possibilistic"
MODES = (UNIFORM, POSSIBILISTIC)

DEFAULT_MAX_EVENTS = 12
DEFAULT_MC_SAMPLES = 200_000


@dataclass(frozen=True)
class RealizationShape:
    """Which events occur, in which order, with which labels; no times."""

    order: tuple
    activities: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "activities", tuple(self.activities))
        if len(self.order) != len(self.activities):
            raise ValueError("order and activities differ in length")

    def __iter__(self):
        return iter(zip(self.order, self.activities))


@dataclass(frozen=True)
class Step:
    event_id: str
    activity: str
    time: float  # days since the trace epoch


@dataclass(frozen=True)
class Realization:
    steps: tuple
    weight: float | None = None

    @property
    def shape(self) -> RealizationShape:
        return RealizationShape(tuple(s.event_id for s in self.steps),
                                tuple(s.activity for s in self.steps))


class ProbabilityEstimate(NamedTuple):
    value: float
    stderr: float = 0.0
    exact: bool = True


def _check_mode(mode, allow_none=True):
    if mode is None and allow_none:
        return
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _require_enumerable(trace: UncertainTrace, max_events: int):
    if len(trace.events) > max_events:
        raise errors.TooManyEvents(
            f"trace {trace.case_id!r} has {len(trace.events)} events, cap is {max_events}")
    for ev in trace.events:
        if isinstance(ev.timestamp, WeakDensity):
            raise errors.ContinuousDensityPresent(
                f"event {ev.event_id!r} of trace {trace.case_id!r} has a density timestamp; "
                "use sampling instead")


def feasible_orders(items) -> Iterator[tuple]:
    """Event sequences that admit non-decreasing times within their intervals.

    ``items`` are ``(event_id, lo, hi)`` triples. A sequence is feasible iff
    placing each event at ``max(previous time, lo)`` never exceeds its ``hi``.
    """
    items = list(items)

    def rec(prefix, remaining, t):
        if not remaining:
            yield tuple(prefix)
            return
        for idx, (eid, lo, hi) in enumerate(remaining):
            nt = lo if t is None else max(t, lo)
            if nt > hi:
                continue
            rest = remaining[:idx] + remaining[idx + 1:]
            # an event that must end before nt can no longer be placed
            if any(r_hi < nt for _, _, r_hi in rest):
                continue
            prefix.append(eid)
            yield from rec(prefix, rest, nt)
            prefix.pop()

    return rec([], items, None)


def is_feasible(items) -> bool:
    t = None
    for _, lo, hi in items:
        t = lo if t is None else max(t, lo)
        if t > hi:
            return False
    return True


def iter_realizations(trace: UncertainTrace, max_events: int = DEFAULT_MAX_EVENTS):
    _require_enumerable(trace, max_events)
    events = trace.events
    optional = [i for i, ev in enumerate(events) if not isinstance(ev.indeterminacy, Determinate)]
    supports = {ev.event_id: ev.activity.support for ev in events}
    for mask in range(1 << len(optional)):
        dropped = {optional[j] for j in range(len(optional)) if not mask >> j & 1}
        items = [(ev.event_id, ev.timestamp.min, ev.timestamp.max)
                 for i, ev in enumerate(events) if i not in dropped]
        for order in feasible_orders(items):
            for labels in itertools.product(*(supports[eid] for eid in order)):
                yield RealizationShape(order, labels)


def enumerate_realizations(trace: UncertainTrace, max_events: int = DEFAULT_MAX_EVENTS) -> list:
    """Every realization shape of a trace whose timestamps are points or intervals.

    Indeterminate events are optional, determinate ones mandatory. Orders are
    checked with weak inequality, so events with touching intervals yield one
    shape per distinct sequence.
    """
    return list(iter_realizations(trace, max_events))


class _Weigher:
    """Probability factors for one trace under fixed settings."""

    def __init__(self, trace, mode, epoch, strict, n_mc, seed):
        _check_mode(mode)
        if mode is None and any(is_strongly_uncertain(ev) for ev in trace.events):
            raise errors.ModeRequired(
                f"trace {trace.case_id!r} has strongly uncertain attributes; choose a mode "
                f"({', '.join(MODES)})")
        self.trace = trace
        self.mode = mode
        self.epoch = trace_epoch(trace, epoch)
        self.strict = strict
        self.n_mc = n_mc
        self.seed = seed
        self.by_id = {ev.event_id: ev for ev in trace.events}
        self.order_probability = lru_cache(maxsize=None)(self._order_probability)

    def occurrence(self, ev, included: bool) -> float:
        ind = ev.indeterminacy
        if isinstance(ind, Determinate):
            return 1.0 if included else 0.0
        if isinstance(ind, WeakIndeterminate):
            return 1.0 - ind.p_not_occurred if included else ind.p_not_occurred
        if self.mode == POSSIBILISTIC:
            raise errors.ModeRequired(
                f"event {ev.event_id!r}: strong indeterminacy has no weight in possibilistic mode")
        return 0.5

    def label(self, ev, label) -> float:
        act = ev.activity
        if label not in act.support:
            return 0.0
        if isinstance(act, StrongSet):
            return 1.0 if self.mode == POSSIBILISTIC else 1.0 / len(act.labels)
        total = act.total
        if self.strict and total < 1.0 - EPSILON:
            raise errors.SubStochasticMass(
                f"event {ev.event_id!r}: activity probabilities sum to {total:.12g} < 1")
        return act.probabilities[label] / total

    def _order_probability(self, order: tuple) -> ProbabilityEstimate:
        events = [self.by_id[eid] for eid in order]
        if len(events) <= 1:
            return ProbabilityEstimate(1.0)
        dense = any(isinstance(ev.timestamp, WeakDensity) for ev in events)
        spread = any(isinstance(ev.timestamp, StrongInterval) and not ev.timestamp.is_certain
                     for ev in events)
        if not dense:
            items = [(ev.event_id, ev.timestamp.min, ev.timestamp.max) for ev in events]
            if self.mode == POSSIBILISTIC:
                return ProbabilityEstimate(1.0 if is_feasible(items) else 0.0)
            measures = [interval_days(ev.timestamp, self.epoch) for ev in events]
            strict = [a > b for a, b in zip(order, order[1:])]
            return ProbabilityEstimate(chain_probability(measures, strict))
        if self.mode == POSSIBILISTIC and spread:
            raise errors.ModeRequired(
                "possibilistic mode cannot weigh orders mixing intervals with densities")
        return self._monte_carlo(order, events)

    def _monte_carlo(self, order, events) -> ProbabilityEstimate:
        rng = substream(self.seed, self.trace.case_id, "order", *order)
        hits = 0
        remaining = self.n_mc
        while remaining > 0:
            n = min(remaining, 250_000)
            remaining -= n
            draws = [_draw_times(ev, rng, n, self.epoch) for ev in events]
            ok = np.ones(n, dtype=bool)
            for (a_id, xa), (b_id, xb) in zip(zip(order, draws), zip(order[1:], draws[1:])):
                ok &= (xa < xb) | ((xa == xb) & (a_id < b_id))
            hits += int(ok.sum())
        p = hits / self.n_mc
        return ProbabilityEstimate(p, math.sqrt(p * (1.0 - p) / self.n_mc), exact=False)

    def weigh(self, shape: RealizationShape) -> ProbabilityEstimate:
        if len(set(shape.order)) != len(shape.order):
            raise ValueError(f"event repeated in realization {shape.order}")
        unknown = [eid for eid in shape.order if eid not in self.by_id]
        if unknown:
            raise ValueError(f"events {unknown} not in trace {self.trace.case_id!r}")
        included = set(shape.order)
        factor = 1.0
        for ev in self.trace.events:
            factor *= self.occurrence(ev, ev.event_id in included)
        for eid, label in shape:
            factor *= self.label(self.by_id[eid], label)
        if factor == 0.0:
            return ProbabilityEstimate(0.0)
        order = self.order_probability(shape.order)
        return ProbabilityEstimate(factor * order.value, factor * order.stderr, order.exact)


def _draw_times(ev, rng, n, epoch):
    ts = ev.timestamp
    if isinstance(ts, WeakDensity):
        return ts.spec.sample(rng, n)
    lo, hi = interval_days(ts, epoch)
    if lo == hi:
        return np.full(n, lo)
    return rng.uniform(lo, hi, n)


def realization_probability(trace: UncertainTrace, realization, mode: str | None = None, *,
                            epoch: datetime | None = None, strict: bool = False,
                            n_mc: int = DEFAULT_MC_SAMPLES, seed: int = 0) -> ProbabilityEstimate:
    """Probability of one realization (a :class:`Realization` or its shape).

    The product of occurrence factors for every event, label factors for the
    included ones, and the probability that the included events' times come
    out in the realization's order (ties go to the smaller event id). That
    last factor is exact for points and intervals and a Monte Carlo estimate
    with standard error when a density is involved.

    Sub-stochastic weak maps are renormalized unless ``strict``.
    """
    shape = realization.shape if isinstance(realization, Realization) else realization
    return _Weigher(trace, mode, epoch, strict, n_mc, seed).weigh(shape)


def weighted_realizations(trace: UncertainTrace, mode: str | None = UNIFORM, *,
                          max_events: int = DEFAULT_MAX_EVENTS, epoch=None, strict=False):
    """Pairs of (shape, probability) over the full enumeration."""
    weigher = _Weigher(trace, mode, epoch, strict, DEFAULT_MC_SAMPLES, 0)
    return [(shape, weigher.weigh(shape).value)
            for shape in iter_realizations(trace, max_events)]


def sum_check(trace: UncertainTrace, mode: str | None = UNIFORM, *,
              max_events: int = DEFAULT_MAX_EVENTS, epoch=None, strict=False) -> float:
    """Total probability over all enumerated realizations (1 for proper inputs)."""
    return math.fsum(p for _, p in weighted_realizations(
        trace, mode, max_events=max_events, epoch=epoch, strict=strict))


def sample_realizations(trace: UncertainTrace, n: int, seed: int, mode: str = UNIFORM, *,
                        epoch: datetime | None = None, strict: bool = False) -> list:
    """Draw ``n`` independent realizations with concrete day-axis times.

    The stream depends only on (seed, case id), so results do not change with
    the position of the trace in its log.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_mode(mode, allow_none=False)
    events = trace.events
    if mode == POSSIBILISTIC and any(is_strongly_uncertain(ev) for ev in events):
        raise errors.ModeRequired("sampling strong attributes needs uniform mode")
    if not events:
        return [Realization(()) for _ in range(n)]
    ep = trace_epoch(trace, epoch)
    rng = substream(seed, trace.case_id, "sample")

    m = len(events)
    included = np.ones((n, m), dtype=bool)
    times = np.empty((n, m))
    labels = np.zeros((n, m), dtype=np.intp)
    for j, ev in enumerate(events):
        ind = ev.indeterminacy
        if isinstance(ind, StrongIndeterminate):
            included[:, j] = rng.random(n) < 0.5
        elif isinstance(ind, WeakIndeterminate):
            included[:, j] = rng.random(n) >= ind.p_not_occurred
        act = ev.activity
        k = len(act.support)
        if k > 1:
            if isinstance(act, WeakMap):
                if strict and act.total < 1.0 - EPSILON:
                    raise errors.SubStochasticMass(
                        f"event {ev.event_id!r}: activity probabilities sum to {act.total:.12g} < 1")
                probs = np.array([p for _, p in act.entries]) / act.total
                labels[:, j] = rng.choice(k, size=n, p=probs)
            else:
                labels[:, j] = rng.integers(0, k, size=n)
        times[:, j] = _draw_times(ev, rng, n, ep)

    id_rank = np.argsort(np.argsort([ev.event_id for ev in events], kind="stable"))
    keyed = np.where(included, times, np.inf)
    order = np.lexsort((np.broadcast_to(id_rank, (n, m)), keyed), axis=1)

    ids = [ev.event_id for ev in events]
    supports = [ev.activity.support for ev in events]
    out = []
    for r in range(n):
        row_inc, row_t, row_l = included[r], times[r], labels[r]
        steps = tuple(
            Step(ids[j], supports[j][row_l[j]], float(row_t[j]))
            for j in order[r] if row_inc[j]
        )
        out.append(Realization(steps))
    return out
