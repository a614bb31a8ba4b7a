"""Turn certain logs into uncertain ones, randomly or from explicit directives.

Stochastic mode decides each event's three aspects independently, each from
its own substream of ``(seed, case_id, aspect)``; directive mode applies a
hand-written annotation per event so specific examples can be built exactly.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta

import numpy as np

from . import errors
from .model import (
    ASPECTS,
    STRONG_INDETERMINATE,
    Determinate,
    DensitySpec,
    StrongInterval,
    StrongSet,
    UncertainLog,
    UncertainTrace,
    WeakDensity,
    WeakIndeterminate,
    WeakMap,
    flavors,
)
from .rng import substream
from .stats import FLAVOR_KEYS, StatsSummary, uncertainty_stats
from .timeaxis import UNIX_EPOCH, midnight_utc, parse_duration, to_days

DENSITY_KINDS = ("GAUSSIAN", "UNIFORM")


@dataclass(frozen=True)
class InjectionConfig:
    p_activity: float = 0.0
    k_labels: int = 1
    p_timestamp: float = 0.0
    interval_halfwidth: timedelta = timedelta(days=1)
    p_indeterminacy: float = 0.0
    weak_fraction: float = 0.0
    dirichlet_alpha: float = 1.0
    density_kind: str = "GAUSSIAN"
    seed: int = 0
    weak_indeterminacy_cap: float = 0.5
    epoch: datetime | None = None

    def __post_init__(self):
        for name in ("p_activity", "p_timestamp", "p_indeterminacy", "weak_fraction"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.k_labels < 1:
            raise ValueError("k_labels must be >= 1")
        if self.interval_halfwidth <= timedelta(0):
            raise ValueError("interval_halfwidth must be positive")
        if not self.dirichlet_alpha > 0:
            raise ValueError("dirichlet_alpha must be > 0")
        if self.density_kind not in DENSITY_KINDS:
            raise ValueError(f"density_kind must be one of {DENSITY_KINDS}")
        if not 0.0 < self.weak_indeterminacy_cap <= 1.0:
            raise ValueError("weak_indeterminacy_cap must be in (0, 1]")


def _is_certain_input(ev) -> bool:
    return (isinstance(ev.activity, StrongSet) and len(ev.activity.labels) == 1
            and isinstance(ev.timestamp, StrongInterval) and ev.timestamp.is_certain
            and isinstance(ev.indeterminacy, Determinate))


def alphabet(log: UncertainLog) -> list[str]:
    return sorted({label for ev in log.events for label in ev.activity.support})


def _density_epoch(timestamps, override):
    """Day-axis origin the finished trace will report, computed before densities exist."""
    if override is not None:
        return override
    bounds = [ts.min for ts in timestamps if isinstance(ts, StrongInterval)]
    return midnight_utc(min(bounds)) if bounds else UNIX_EPOCH


def _centered_density(kind, t, halfwidth, epoch):
    center = to_days(t, epoch)
    h = halfwidth.total_seconds() / 86400.0
    if kind == "GAUSSIAN":
        return DensitySpec.gaussian(center, h)
    return DensitySpec.uniform(center - h, center + h)


def _inject_trace(trace: UncertainTrace, cfg: InjectionConfig, labels: list[str]) -> UncertainTrace:
    r_act = substream(cfg.seed, trace.case_id, "activity")
    r_ts = substream(cfg.seed, trace.case_id, "timestamp")
    r_ind = substream(cfg.seed, trace.case_id, "indeterminacy")
    h = cfg.interval_halfwidth
    planned = []
    for ev in trace.events:
        true_label = next(iter(ev.activity.labels))
        t = ev.timestamp.min

        activity = ev.activity
        if r_act.random() < cfg.p_activity:
            others = [a for a in labels if a != true_label]
            picks = r_act.permutation(len(others))[:cfg.k_labels]
            extra = [others[i] for i in sorted(picks)]
            if r_act.random() < cfg.weak_fraction:
                probs = r_act.dirichlet([cfg.dirichlet_alpha] * (cfg.k_labels + 1))
                probs = np.maximum(probs, 1e-12)
                probs = np.sort(probs / probs.sum())[::-1]
                activity = WeakMap([(true_label, float(probs[0]))]
                                   + [(a, float(p)) for a, p in zip(extra, probs[1:])])
            else:
                activity = StrongSet([true_label, *extra])

        timestamp = ev.timestamp
        if r_ts.random() < cfg.p_timestamp:
            if r_ts.random() < cfg.weak_fraction:
                timestamp = ("density", t)
            else:
                timestamp = StrongInterval(t - h, t + h)

        indeterminacy = ev.indeterminacy
        if r_ind.random() < cfg.p_indeterminacy:
            if r_ind.random() < cfg.weak_fraction:
                # (0, cap]: 1 - random() never returns 0
                indeterminacy = WeakIndeterminate(cfg.weak_indeterminacy_cap * (1.0 - r_ind.random()))
            else:
                indeterminacy = STRONG_INDETERMINATE
        planned.append((ev, activity, timestamp, indeterminacy, (true_label, t)))

    epoch = _density_epoch([p[2] for p in planned], cfg.epoch)
    events = []
    for ev, activity, timestamp, indeterminacy, fallback in planned:
        if isinstance(timestamp, tuple):
            timestamp = WeakDensity(_centered_density(cfg.density_kind, timestamp[1], h, epoch))
        events.append(replace(ev, activity=activity, timestamp=timestamp,
                              indeterminacy=indeterminacy, wire_fallback=fallback))
    return UncertainTrace(trace.case_id, events, trace.trace_attributes)


def inject(log: UncertainLog, cfg: InjectionConfig) -> UncertainLog:
    """Deform a certain log into an uncertain one. Deterministic given ``cfg.seed``."""
    for tr in log.traces:
        for ev in tr.events:
            if not _is_certain_input(ev):
                raise errors.InputNotCertain(
                    f"event {ev.event_id!r} of trace {tr.case_id!r} is already uncertain")
    labels = alphabet(log)
    if cfg.p_activity > 0 and cfg.k_labels >= len(labels):
        raise errors.AlphabetTooSmall(
            f"k_labels={cfg.k_labels} needs at least {cfg.k_labels + 1} distinct activities, "
            f"log has {len(labels)}")
    traces = [_inject_trace(tr, cfg, labels) for tr in log.traces]
    return UncertainLog(traces, log.log_attributes, log.xml_attributes, log.header)


# --------------------------------------------------------------------------
# directives

@dataclass(frozen=True)
class Directive:
    case_id: str
    event_id: str
    activity: object = None
    halfwidth: timedelta | None = None
    density: DensitySpec | None = None
    indeterminacy: object = None


_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"
_DENSITY = re.compile(rf"^(N|U|G|Γ)\(\s*({_NUM})\s*,\s*({_NUM})\s*\)$")
_DENSITY_BUILDERS = {"N": DensitySpec.gaussian, "U": DensitySpec.uniform,
                     "G": DensitySpec.gamma, "Γ": DensitySpec.gamma}


def _parse_token(token, fields, where):
    kind, _, body = token.partition(":")
    if not body:
        raise errors.DirectiveError(f"{where}: bad token {token!r}")
    if kind == "act":
        if "@" in body:
            entries = []
            for part in body.split(","):
                label, _, p = part.rpartition("@")
                try:
                    entries.append((label, float(p)))
                except ValueError:
                    raise errors.DirectiveError(f"{where}: bad probability in {token!r}") from None
            fields["activity"] = WeakMap(entries)
        else:
            fields["activity"] = StrongSet(body.split("|"))
    elif kind == "ts":
        m = _DENSITY.match(body)
        if m:
            fields["density"] = _DENSITY_BUILDERS[m.group(1)](float(m.group(2)), float(m.group(3)))
        elif body[:1] == "±" or body[:2] == "+-":
            try:
                fields["halfwidth"] = parse_duration(body.lstrip("±+-"))
            except ValueError as exc:
                raise errors.DirectiveError(f"{where}: {exc}") from None
        else:
            raise errors.DirectiveError(f"{where}: bad timestamp directive {token!r}")
    elif kind == "ind":
        if body == "?":
            fields["indeterminacy"] = STRONG_INDETERMINATE
        elif body.startswith("?@"):
            try:
                fields["indeterminacy"] = WeakIndeterminate(float(body[2:]))
            except ValueError:
                raise errors.DirectiveError(f"{where}: bad probability in {token!r}") from None
        else:
            raise errors.DirectiveError(f"{where}: bad indeterminacy directive {token!r}")
    else:
        raise errors.DirectiveError(f"{where}: unknown directive {kind!r}")


def parse_directives(text: str) -> list[Directive]:
    """Parse lines ``case_id event_id [act:..] [ts:..] [ind:..]``; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"line {lineno}"
        if len(parts) < 2:
            raise errors.DirectiveError(f"{where}: expected case_id and event_id")
        fields = {}
        try:
            for token in parts[2:]:
                _parse_token(token, fields, where)
        except errors.ModelError as exc:
            raise errors.DirectiveError(f"{where}: {exc}") from None
        if "halfwidth" in fields and "density" in fields:
            raise errors.DirectiveError(f"{where}: two timestamp directives")
        out.append(Directive(parts[0], parts[1], **fields))
    return out


def apply_directives(log: UncertainLog, directives) -> UncertainLog:
    """Overwrite the aspects named by each directive; other aspects stay as they are."""
    todo = {}
    for d in directives:
        if (d.case_id, d.event_id) in todo:
            raise errors.DirectiveError(f"two directives for {d.case_id}/{d.event_id}")
        todo[(d.case_id, d.event_id)] = d
    traces = []
    for tr in log.traces:
        events = []
        for ev in tr.events:
            d = todo.pop((tr.case_id, ev.event_id), None)
            if d is None:
                events.append(ev)
                continue
            changes = {}
            if d.activity is not None:
                changes["activity"] = d.activity
            if d.halfwidth is not None:
                ts = ev.timestamp
                if not isinstance(ts, StrongInterval):
                    raise errors.DirectiveError(
                        f"{tr.case_id}/{ev.event_id}: cannot widen a density timestamp")
                changes["timestamp"] = StrongInterval(ts.min - d.halfwidth, ts.max + d.halfwidth)
            if d.density is not None:
                changes["timestamp"] = WeakDensity(d.density)
            if d.indeterminacy is not None:
                changes["indeterminacy"] = d.indeterminacy
            events.append(replace(ev, **changes))
        traces.append(UncertainTrace(tr.case_id, events, tr.trace_attributes))
    if todo:
        missing = ", ".join(f"{c}/{e}" for c, e in todo)
        raise errors.DirectiveError(f"directives name unknown events: {missing}")
    return UncertainLog(traces, log.log_attributes, log.xml_attributes, log.header)


# --------------------------------------------------------------------------
# report

@dataclass
class InjectionReport:
    n_events: int
    introduced: dict = field(default_factory=lambda: dict.fromkeys(FLAVOR_KEYS, 0))
    before: StatsSummary | None = None
    after: StatsSummary | None = None
    config: InjectionConfig | None = None

    def rate(self, aspect: str) -> float:
        if not self.n_events:
            return 0.0
        return (self.introduced[f"strong_{aspect}"] + self.introduced[f"weak_{aspect}"]) / self.n_events

    def expected(self, aspect: str) -> float | None:
        if self.config is None:
            return None
        return getattr(self.config, f"p_{aspect}")

    def bound(self, aspect: str, sigmas: float = 3.0) -> float | None:
        """Half-width of the binomial ``sigmas``-sigma band around the configured rate."""
        p = self.expected(aspect)
        if p is None or not self.n_events:
            return None
        return sigmas * math.sqrt(p * (1.0 - p) / self.n_events)

    def within_bounds(self, aspect: str, sigmas: float = 3.0) -> bool:
        p = self.expected(aspect)
        return p is None or abs(self.rate(aspect) - p) <= self.bound(aspect, sigmas)

    @property
    def delta(self) -> dict:
        if self.before is None or self.after is None:
            return {}
        return {k: self.after.counts[k] - self.before.counts[k] for k in FLAVOR_KEYS}

    def to_dict(self) -> dict:
        aspects = {}
        for aspect in ASPECTS:
            aspects[aspect] = {
                "observed_rate": self.rate(aspect),
                "configured_rate": self.expected(aspect),
                "bound_3sigma": self.bound(aspect),
                "within_bounds": self.within_bounds(aspect),
            }
        return {"n_events": self.n_events, "introduced": dict(self.introduced),
                "delta": self.delta, "rates": aspects}


def injection_report(before: UncertainLog, after: UncertainLog,
                     cfg: InjectionConfig | None = None) -> InjectionReport:
    """Count the annotations ``after`` adds over ``before``, event by event."""
    b_events = {(ev.case_id, ev.event_id): ev for ev in before.events}
    a_events = {(ev.case_id, ev.event_id): ev for ev in after.events}
    if b_events.keys() != a_events.keys():
        raise errors.IdMismatch("logs do not hold the same (case id, event id) pairs")
    report = InjectionReport(len(a_events), before=uncertainty_stats(before),
                             after=uncertainty_stats(after), config=cfg)
    for key, ev in a_events.items():
        fb, fa = flavors(b_events[key]), flavors(ev)
        for aspect in ASPECTS:
            if fa[aspect] and fa[aspect] != fb[aspect]:
                report.introduced[f"{fa[aspect]}_{aspect}"] += 1
    return report

