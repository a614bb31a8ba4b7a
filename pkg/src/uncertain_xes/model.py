"""In-memory model of uncertain attributes, events, traces and logs.

All values are frozen dataclasses. Constructors check their own invariants and
raise the matching :mod:`~uncertain_xes.errors` class. Inside an
:func:`unchecked` block construction skips those checks, which is how
deliberately broken fixtures are built for :func:`validate_log` to report on.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Iterator, Mapping, Union

from . import errors
from .timeaxis import UNIX_EPOCH, midnight_utc, normalize, to_days

EPSILON = 1e-9

_checking = contextvars.ContextVar("uncertain_xes_checking", default=True)


@contextlib.contextmanager
def unchecked():
    """Build model values without enforcing invariants (for fixtures and tests)."""
    token = _checking.set(False)
    try:
        yield
    finally:
        _checking.reset(token)


class _Checked:
    def problems(self) -> Iterator[tuple[type, str]]:
        return iter(())

    def __post_init__(self):
        if _checking.get():
            for exc, message in self.problems():
                raise exc(message)


def _probability_problems(p, what):
    if not isinstance(p, (int, float)) or isinstance(p, bool) or not math.isfinite(p):
        yield errors.ProbabilityOutOfRange, f"{what}: probability {p!r} is not a real number"
    elif not 0.0 < p <= 1.0:
        yield errors.ProbabilityOutOfRange, f"{what}: probability {p!r} outside (0, 1]"


# --------------------------------------------------------------------------
# activity

@dataclass(frozen=True)
class StrongSet(_Checked):
    """A non-empty set of candidate activity labels, no probabilities."""

    labels: frozenset

    def __init__(self, labels: Iterable[str]):
        if isinstance(labels, str):
            labels = (labels,)
        object.__setattr__(self, "labels", frozenset(labels))
        self.__post_init__()

    def problems(self):
        if not self.labels:
            yield errors.EmptyActivitySet, "activity set is empty"
        for label in self.labels:
            if not isinstance(label, str) or not label:
                yield errors.EmptyLabel, f"activity label {label!r} is not a non-empty string"

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(sorted(self.labels))

    def __repr__(self):
        return f"StrongSet({set(self.support)!r})"


@dataclass(frozen=True, eq=False)
class WeakMap(_Checked):
    """Activity labels with probabilities; the total may be below 1.

    Entry order is kept for serialization; equality ignores it.
    """

    entries: tuple

    def __init__(self, entries: Union[Mapping[str, float], Iterable[tuple[str, float]]]):
        if isinstance(entries, Mapping):
            entries = entries.items()
        object.__setattr__(self, "entries", tuple((label, p) for label, p in entries))
        self.__post_init__()

    def problems(self):
        if not self.entries:
            yield errors.EmptyActivitySet, "weak activity map is empty"
            return
        seen = set()
        for label, p in self.entries:
            if not isinstance(label, str) or not label:
                yield errors.EmptyLabel, f"activity label {label!r} is not a non-empty string"
            if label in seen:
                yield errors.DuplicateLabel, f"label {label!r} listed twice"
            seen.add(label)
            yield from _probability_problems(p, f"label {label!r}")
        total = self.total
        if math.isfinite(total) and total > 1.0 + EPSILON:
            yield errors.ProbabilityMassExceeded, f"probabilities sum to {total:.12g} > 1"

    @property
    def probabilities(self) -> dict[str, float]:
        return dict(self.entries)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    @property
    def total(self) -> float:
        try:
            return math.fsum(p for _, p in self.entries)
        except TypeError:
            return math.nan

    def __eq__(self, other):
        if not isinstance(other, WeakMap):
            return NotImplemented
        return len(self.entries) == len(other.entries) and self.probabilities == other.probabilities

    def __hash__(self):
        return hash(frozenset(self.entries))

    def __repr__(self):
        return f"WeakMap({self.probabilities!r})"


UncertainActivity = Union[StrongSet, WeakMap]


# --------------------------------------------------------------------------
# timestamp

DENSITY_PARAMS = {
    "GAUSSIAN": ("parameter_mean", "parameter_stddev"),
    "UNIFORM": ("parameter_low", "parameter_high"),
    "GAMMA": ("parameter_shape", "parameter_scale"),
}


@dataclass(frozen=True)
class DensitySpec(_Checked):
    """A named density over the day axis of a trace.

    ``params`` is an ordered tuple of ``(name, value)`` pairs with the names
    fixed per kind, see ``DENSITY_PARAMS``.
    """

    kind: str
    params: tuple

    def __init__(self, kind: str, params):
        if isinstance(params, Mapping):
            params = params.items()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple((name, value) for name, value in params))
        self.__post_init__()

    @classmethod
    def gaussian(cls, mean, stddev):
        return cls("GAUSSIAN", [("parameter_mean", mean), ("parameter_stddev", stddev)])

    @classmethod
    def uniform(cls, low, high):
        return cls("UNIFORM", [("parameter_low", low), ("parameter_high", high)])

    @classmethod
    def gamma(cls, shape, scale):
        return cls("GAMMA", [("parameter_shape", shape), ("parameter_scale", scale)])

    def problems(self):
        if self.kind not in DENSITY_PARAMS:
            yield errors.UnknownDensityFunction, f"unknown density function {self.kind!r}"
            return
        names = tuple(name for name, _ in self.params)
        expected = DENSITY_PARAMS[self.kind]
        if names != expected:
            yield errors.BadDensityParams, f"{self.kind} needs parameters {list(expected)}, got {list(names)}"
            return
        values = self.values
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)
                   for v in values):
            yield errors.BadDensityParams, f"{self.kind} parameters must be finite reals: {values}"
            return
        a, b = values
        if self.kind == "GAUSSIAN" and not b > 0:
            yield errors.BadDensityParams, f"GAUSSIAN stddev must be > 0, got {b}"
        elif self.kind == "UNIFORM" and not a < b:
            yield errors.BadDensityParams, f"UNIFORM needs low < high, got [{a}, {b}]"
        elif self.kind == "GAMMA" and not (a > 0 and b > 0):
            yield errors.BadDensityParams, f"GAMMA shape and scale must be > 0, got ({a}, {b})"

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.params)

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    @property
    def mean(self) -> float:
        a, b = self.values
        if self.kind == "GAUSSIAN":
            return float(a)
        if self.kind == "UNIFORM":
            return (a + b) / 2.0
        return float(a * b)

    def sample(self, rng, size):
        """Draw ``size`` day-axis values with a numpy ``Generator``."""
        a, b = self.values
        if self.kind == "GAUSSIAN":
            return rng.normal(a, b, size)
        if self.kind == "UNIFORM":
            return rng.uniform(a, b, size)
        return rng.gamma(a, b, size)

    def cdf(self, x: float) -> float:
        from scipy import stats

        a, b = self.values
        if self.kind == "GAUSSIAN":
            return float(stats.norm.cdf(x, loc=a, scale=b))
        if self.kind == "UNIFORM":
            return float(stats.uniform.cdf(x, loc=a, scale=b - a))
        return float(stats.gamma.cdf(x, a, scale=b))


@dataclass(frozen=True)
class StrongInterval(_Checked):
    """Closed interval ``[min, max]`` of possible timestamps.

    A certain timestamp is the degenerate interval; see :func:`Certain`.
    """

    min: datetime
    max: datetime

    def __post_init__(self):
        for name in ("min", "max"):
            value = getattr(self, name)
            if isinstance(value, datetime):
                object.__setattr__(self, name, normalize(value))
        super().__post_init__()

    def problems(self):
        if not (isinstance(self.min, datetime) and isinstance(self.max, datetime)):
            yield errors.InvertedInterval, "interval bounds must be datetimes"
        elif self.min > self.max:
            yield errors.InvertedInterval, (
                f"interval min {self.min.isoformat()} is after max {self.max.isoformat()}")

    @property
    def is_certain(self) -> bool:
        return self.min == self.max

    @property
    def width(self):
        return self.max - self.min

    @property
    def midpoint(self) -> datetime:
        return normalize(self.min + (self.max - self.min) / 2)

    def __repr__(self):
        if self.is_certain:
            return f"Certain({self.min.isoformat()})"
        return f"StrongInterval({self.min.isoformat()}, {self.max.isoformat()})"


def Certain(t: datetime) -> StrongInterval:  # noqa: N802 - reads as a variant name
    """A fully known timestamp: the interval ``[t, t]``."""
    return StrongInterval(t, t)


@dataclass(frozen=True)
class WeakDensity(_Checked):
    spec: DensitySpec

    def problems(self):
        if not isinstance(self.spec, DensitySpec):
            yield errors.BadDensityParams, f"not a DensitySpec: {self.spec!r}"
        else:
            yield from self.spec.problems()


UncertainTimestamp = Union[StrongInterval, WeakDensity]


# --------------------------------------------------------------------------
# indeterminacy

@dataclass(frozen=True)
class Determinate:
    """The event certainly occurred (the empty set in set notation)."""


@dataclass(frozen=True)
class StrongIndeterminate:
    """The event may not have occurred; no probability given ("?")."""


@dataclass(frozen=True)
class WeakIndeterminate(_Checked):
    p_not_occurred: float

    def problems(self):
        yield from _probability_problems(self.p_not_occurred, "indeterminacy")


DETERMINATE = Determinate()
STRONG_INDETERMINATE = StrongIndeterminate()

UncertainIndeterminacy = Union[Determinate, StrongIndeterminate, WeakIndeterminate]


# --------------------------------------------------------------------------
# passthrough XES content

@dataclass(frozen=True)
class XesAttribute:
    """A typed XES attribute kept verbatim. ``kind`` is the element tag."""

    kind: str
    key: str | None
    value: object = None
    children: tuple = ()


@dataclass(frozen=True)
class XesElement:
    """Log header elements such as ``<extension>``, ``<global>``, ``<classifier>``."""

    tag: str
    attrib: tuple = ()
    children: tuple = ()


# --------------------------------------------------------------------------
# events, traces, logs

def _component_problems(value, kinds, what):
    if not isinstance(value, kinds):
        yield errors.ModelError, f"{what} has unsupported type {type(value).__name__}"
    elif isinstance(value, _Checked):
        yield from value.problems()


@dataclass(frozen=True)
class UncertainEvent(_Checked):
    event_id: str
    case_id: str
    activity: UncertainActivity
    timestamp: UncertainTimestamp
    indeterminacy: UncertainIndeterminacy = DETERMINATE
    extra_attributes: tuple = ()
    # (label, timestamp) as read from the wire; reused on output when still consistent
    wire_fallback: tuple | None = field(default=None, compare=False, repr=False)

    def problems(self):
        if not isinstance(self.event_id, str) or not self.event_id:
            yield errors.EmptyEventId, "event id must be a non-empty string"
        if not isinstance(self.case_id, str):
            yield errors.ModelError, "case id must be a string"
        yield from _component_problems(self.activity, (StrongSet, WeakMap), "activity")
        yield from _component_problems(self.timestamp, (StrongInterval, WeakDensity), "timestamp")
        yield from _component_problems(
            self.indeterminacy, (Determinate, StrongIndeterminate, WeakIndeterminate), "indeterminacy")


@dataclass(frozen=True)
class UncertainTrace(_Checked):
    case_id: str
    events: tuple = ()
    trace_attributes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "trace_attributes", tuple(self.trace_attributes))
        super().__post_init__()

    def problems(self):
        seen = set()
        for ev in self.events:
            if ev.event_id in seen:
                yield errors.DuplicateEventId, f"event id {ev.event_id!r} repeated in trace {self.case_id!r}"
            seen.add(ev.event_id)
            if ev.case_id != self.case_id:
                yield errors.CaseIdMismatch, (
                    f"event {ev.event_id!r} has case id {ev.case_id!r}, trace is {self.case_id!r}")

    def event(self, event_id: str) -> UncertainEvent:
        for ev in self.events:
            if ev.event_id == event_id:
                return ev
        raise KeyError(event_id)

    def __len__(self):
        return len(self.events)


@dataclass(frozen=True)
class UncertainLog(_Checked):
    traces: tuple = ()
    log_attributes: tuple = ()
    xml_attributes: tuple = ()
    header: tuple = ()
    parse_warnings: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for name in ("traces", "log_attributes", "xml_attributes", "header", "parse_warnings"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        super().__post_init__()

    def problems(self):
        case_ids, event_ids = set(), set()
        for tr in self.traces:
            if tr.case_id in case_ids:
                yield errors.DuplicateCaseId, f"case id {tr.case_id!r} repeated"
            case_ids.add(tr.case_id)
            for ev in tr.events:
                if ev.event_id in event_ids:
                    yield errors.DuplicateEventId, f"event id {ev.event_id!r} repeated in log"
                event_ids.add(ev.event_id)

    def trace(self, case_id: str) -> UncertainTrace:
        for tr in self.traces:
            if tr.case_id == case_id:
                return tr
        raise KeyError(case_id)

    @property
    def events(self) -> Iterator[UncertainEvent]:
        for tr in self.traces:
            yield from tr.events


def make_event(event_id, case_id, activity, timestamp, indeterminacy=DETERMINATE,
               extra_attributes=()) -> UncertainEvent:
    """Build an event and check every nested invariant, even for parts built unchecked."""
    token = _checking.set(True)
    try:
        ev = UncertainEvent(event_id, case_id, activity, timestamp, indeterminacy,
                            tuple(extra_attributes))
    finally:
        _checking.reset(token)
    return ev


# --------------------------------------------------------------------------
# uncertainty flavors

ASPECTS = ("activity", "timestamp", "indeterminacy")


def activity_flavor(a) -> str | None:
    if isinstance(a, StrongSet):
        return "strong" if len(a.labels) > 1 else None
    if len(a.entries) > 1 or any(p < 1.0 for _, p in a.entries):
        return "weak"
    return None


def timestamp_flavor(t) -> str | None:
    if isinstance(t, WeakDensity):
        return "weak"
    return None if t.is_certain else "strong"


def indeterminacy_flavor(i) -> str | None:
    if isinstance(i, StrongIndeterminate):
        return "strong"
    if isinstance(i, WeakIndeterminate):
        return "weak"
    return None


def flavors(event: UncertainEvent) -> dict[str, str | None]:
    """Map each aspect to ``'strong'``, ``'weak'`` or ``None`` (certain)."""
    return {
        "activity": activity_flavor(event.activity),
        "timestamp": timestamp_flavor(event.timestamp),
        "indeterminacy": indeterminacy_flavor(event.indeterminacy),
    }


def is_strongly_uncertain(event: UncertainEvent) -> bool:
    return "strong" in flavors(event).values()


def is_weakly_uncertain(event: UncertainEvent) -> bool:
    return "weak" in flavors(event).values()


def is_certain(event: UncertainEvent) -> bool:
    return not any(flavors(event).values())


def activity_support(a) -> tuple[str, ...]:
    return a.support


# --------------------------------------------------------------------------
# day axis

def trace_epoch(trace: UncertainTrace, override: datetime | None = None) -> datetime:
    """Origin of the day axis that density parameters are expressed on.

    Midnight UTC of the earliest interval bound in the trace, or ``override``
    when given. A trace with no interval timestamps at all falls back to the
    Unix epoch.
    """
    if override is not None:
        return normalize(override)
    bounds = [ev.timestamp.min for ev in trace.events if isinstance(ev.timestamp, StrongInterval)]
    if not bounds:
        return UNIX_EPOCH
    return midnight_utc(min(bounds))


def interval_days(interval: StrongInterval, epoch: datetime) -> tuple[float, float]:
    return to_days(interval.min, epoch), to_days(interval.max, epoch)
