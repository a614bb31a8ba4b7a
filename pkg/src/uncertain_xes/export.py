"""Export sampled realizations as certain XES logs or CSV rows."""
from __future__ import annotations

import csv

from .model import Certain, StrongSet, UncertainLog, UncertainTrace, make_event, trace_epoch
from .timeaxis import format_timestamp, from_days

CSV_COLUMNS = ("case_id", "step_index", "event_id", "activity", "timestamp", "weight")


def realization_case_id(case_id: str, index: int) -> str:
    return f"{case_id}#{index}"


def realization_trace(trace: UncertainTrace, realization, index: int, epoch=None) -> UncertainTrace:
    """One realization as a certain trace; ids get a ``#index`` suffix to stay unique in a log."""
    ep = trace_epoch(trace, epoch)
    case_id = realization_case_id(trace.case_id, index)
    events = [
        make_event(f"{step.event_id}#{index}", case_id, StrongSet([step.activity]),
                   Certain(from_days(step.time, ep)))
        for step in realization.steps
    ]
    return UncertainTrace(case_id, events, trace.trace_attributes)


def realizations_to_log(pairs, epoch=None, template: UncertainLog | None = None) -> UncertainLog:
    """Build a certain log from ``(source_trace, [realizations])`` pairs."""
    traces = []
    for trace, realizations in pairs:
        for i, r in enumerate(realizations, 1):
            traces.append(realization_trace(trace, r, i, epoch))
    if template is None:
        return UncertainLog(traces)
    return UncertainLog(traces, template.log_attributes, template.xml_attributes, template.header)


def csv_rows(trace: UncertainTrace, realizations, epoch=None):
    ep = trace_epoch(trace, epoch)
    for i, r in enumerate(realizations, 1):
        case_id = realization_case_id(trace.case_id, i)
        for k, step in enumerate(r.steps):
            yield {
                "case_id": case_id,
                "step_index": k,
                "event_id": step.event_id,
                "activity": step.activity,
                "timestamp": format_timestamp(from_days(step.time, ep)),
                "weight": "" if r.weight is None else repr(r.weight),
            }


def write_csv(pairs, fh, epoch=None):
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for trace, realizations in pairs:
        writer.writerows(csv_rows(trace, realizations, epoch))
