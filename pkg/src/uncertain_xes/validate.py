"""Whole-log validation that reports every violation instead of raising."""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    _component_problems,
    StrongSet, WeakMap, StrongInterval, WeakDensity,
    Determinate, StrongIndeterminate, WeakIndeterminate,
)


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str
    severity: str = "error"

    def __str__(self):
        return f"[{self.severity}] {self.code} at {self.path}: {self.message}"

    def to_dict(self):
        return {"code": self.code, "path": self.path, "message": self.message,
                "severity": self.severity}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def errors(self):
        return [v for v in self.violations if v.severity == "error"]

    @property
    def warnings(self):
        return [v for v in self.violations if v.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self):
        return [v.code for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def to_dict(self):
        return {
            "ok": self.ok,
            "error_count": len(self.errors),
            "warning_count": len(self.warnings),
            "violations": [v.to_dict() for v in self.violations],
        }


def trace_path(index: int, trace: UncertainTrace) -> str:
    return f"trace[{index}]({trace.case_id})"


def event_path(t_index, trace, e_index, event) -> str:
    return f"{trace_path(t_index, trace)}/event[{e_index}]({event.event_id})"


def _event_violations(path: str, ev: UncertainEvent):
    if not isinstance(ev.event_id, str) or not ev.event_id:
        yield Violation("EmptyEventId", path, "event id must be a non-empty string")
    aspects = (
        ("activity", ev.activity, (StrongSet, WeakMap)),
        ("timestamp", ev.timestamp, (StrongInterval, WeakDensity)),
        ("indeterminacy", ev.indeterminacy, (Determinate, StrongIndeterminate, WeakIndeterminate)),
    )
    for name, value, kinds in aspects:
        for exc, message in _component_problems(value, kinds, name):
            yield Violation(exc.code, f"{path}/{name}", message)


def validate_log(log: UncertainLog) -> ValidationReport:
    """Check every invariant of the model on ``log``.

    Parse-time warnings recorded on the log (for instance interval bounds
    that arrived unsorted) are included with severity ``warning``.
    """
    report = ValidationReport()
    add = report.violations.append
    first_case = {}
    first_event = {}
    for ti, tr in enumerate(log.traces):
        tpath = trace_path(ti, tr)
        if tr.case_id in first_case:
            add(Violation("DuplicateCaseId", tpath,
                          f"case id {tr.case_id!r} already used by {first_case[tr.case_id]}"))
        else:
            first_case[tr.case_id] = tpath
        for ei, ev in enumerate(tr.events):
            epath = event_path(ti, tr, ei, ev)
            report.violations.extend(_event_violations(epath, ev))
            if ev.case_id != tr.case_id:
                add(Violation("CaseIdMismatch", epath,
                              f"event case id {ev.case_id!r} differs from trace case id {tr.case_id!r}"))
            if ev.event_id in first_event:
                add(Violation("DuplicateEventId", epath,
                              f"event id {ev.event_id!r} already used by {first_event[ev.event_id]}"))
            else:
                first_event[ev.event_id] = epath
    for path, code, message in log.parse_warnings:
        add(Violation(code, path, message, severity="warning"))
    return report
