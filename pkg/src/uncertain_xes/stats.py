"""Summary statistics over the uncertainty annotations of a log."""
from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .model import ASPECTS, StrongInterval, UncertainLog, flavors

FLAVOR_KEYS = tuple(f"{fl}_{aspect}" for fl in ("strong", "weak") for aspect in ASPECTS)


def _zero_counts():
    return dict.fromkeys(FLAVOR_KEYS, 0)


@dataclass
class StatsSummary:
    n_traces: int = 0
    n_events: int = 0
    counts: dict = field(default_factory=_zero_counts)
    activity_set_min: int = 0
    activity_set_max: int = 0
    activity_set_mean: float = 0.0
    # widths of non-degenerate intervals, in days
    interval_widths: list = field(default_factory=list)
    n_certain_events: int = 0

    @property
    def strong_annotations(self) -> int:
        return sum(v for k, v in self.counts.items() if k.startswith("strong_"))

    @property
    def weak_annotations(self) -> int:
        return sum(v for k, v in self.counts.items() if k.startswith("weak_"))

    def interval_width_summary(self) -> dict:
        w = self.interval_widths
        if not w:
            return {"count": 0, "min": 0.0, "max": 0.0, "mean": 0.0, "median": 0.0}
        return {"count": len(w), "min": min(w), "max": max(w),
                "mean": statistics.fmean(w), "median": statistics.median(w)}

    def to_dict(self) -> dict:
        return {
            "n_traces": self.n_traces,
            "n_events": self.n_events,
            "n_certain_events": self.n_certain_events,
            "counts": dict(self.counts),
            "strong_annotations": self.strong_annotations,
            "weak_annotations": self.weak_annotations,
            "activity_set_size": {"min": self.activity_set_min, "max": self.activity_set_max,
                                  "mean": self.activity_set_mean},
            "interval_width_days": self.interval_width_summary(),
        }


def uncertainty_stats(log: UncertainLog) -> StatsSummary:
    s = StatsSummary(n_traces=len(log.traces))
    sizes = []
    for ev in log.events:
        s.n_events += 1
        fl = flavors(ev)
        for aspect, flavor in fl.items():
            if flavor:
                s.counts[f"{flavor}_{aspect}"] += 1
        if not any(fl.values()):
            s.n_certain_events += 1
        sizes.append(len(ev.activity.support))
        ts = ev.timestamp
        if isinstance(ts, StrongInterval) and not ts.is_certain:
            s.interval_widths.append(ts.width.total_seconds() / 86400.0)
    if sizes:
        s.activity_set_min = min(sizes)
        s.activity_set_max = max(sizes)
        s.activity_set_mean = statistics.fmean(sizes)
    return s
