"""Streaming XES reader and writer with the uncertainty extension.

Reading uses ``iterparse`` and drops each trace's elements once the trace is
converted, so memory follows the largest trace rather than the document.
"""
from __future__ import annotations

import gzip
import io
import os
import xml.etree.ElementTree as ET
from datetime import datetime, timezone
from xml.sax.saxutils import escape

from . import errors
from .model import (
    DENSITY_PARAMS,
    DETERMINATE,
    STRONG_INDETERMINATE,
    Certain,
    DensitySpec,
    StrongIndeterminate,
    StrongInterval,
    StrongSet,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    WeakDensity,
    WeakIndeterminate,
    WeakMap,
    XesAttribute,
    XesElement,
    trace_epoch,
    unchecked,
)
from .timeaxis import format_timestamp, from_days, parse_timestamp

# extension keys, bit-exact
DISCRETE_STRONG = "uncertainty:discrete_strong"
CONTINUOUS_STRONG = "uncertainty:continuous_strong"
DISCRETE_WEAK = "uncertainty:discrete_weak"
CONTINUOUS_WEAK = "uncertainty:continuous_weak"
ENTRY = "uncertainty:entry"
PROBABILITY = "uncertainty:probability"
INDETERMINACY = "uncertainty:indeterminacy"
DENSITY_FUNCTION = "uncertainty:density_function"
FUNCTION_PARAMETERS = "uncertainty:function_parameters"

UNCERTAINTY_KEYS = (
    DISCRETE_STRONG, CONTINUOUS_STRONG, DISCRETE_WEAK, CONTINUOUS_WEAK, ENTRY,
    PROBABILITY, INDETERMINACY, DENSITY_FUNCTION, FUNCTION_PARAMETERS,
)

ACTIVITY_KEY = "concept:name"
TIMESTAMP_KEY = "time:timestamp"
ID_KEY = "identity:id"

ATTRIBUTE_TAGS = frozenset(
    ["string", "date", "int", "float", "double", "boolean", "bool", "id", "list", "container"])
COMPOSITE_TAGS = frozenset(["list", "container", "values"])


def auto_event_id(n: int) -> str:
    """Identifier given to the ``n``-th event (1-based, log-wide) lacking ``identity:id``."""
    return f"e{n}"


def auto_case_id(n: int) -> str:
    return f"t{n}"


# --------------------------------------------------------------------------
# reading

def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _typed_value(kind: str, raw: str | None, path: str):
    if kind in COMPOSITE_TAGS:
        return None
    if raw is None:
        raise errors.BadAttributeValue(f"<{kind}> without value", path)
    try:
        if kind == "date":
            return parse_timestamp(raw)
        if kind == "int":
            return int(raw)
        if kind in ("float", "double"):
            return float(raw)
        if kind in ("boolean", "bool"):
            low = raw.strip().lower()
            if low in ("true", "1"):
                return True
            if low in ("false", "0"):
                return False
            raise ValueError(raw)
    except ValueError:
        raise errors.BadAttributeValue(f"bad {kind} value {raw!r}", path) from None
    return raw


def _to_attribute(elem, path: str) -> XesAttribute:
    kind = _local(elem.tag)
    key = elem.get("key")
    here = f"{path}/{kind}[{key}]" if key else f"{path}/{kind}"
    return XesAttribute(
        kind, key, _typed_value(kind, elem.get("value"), here),
        tuple(_to_attribute(child, here) for child in elem),
    )


def _to_element(elem, path: str):
    tag = _local(elem.tag)
    if tag in ATTRIBUTE_TAGS:
        return _to_attribute(elem, path)
    return XesElement(tag, tuple(elem.attrib.items()),
                      tuple(_to_element(child, f"{path}/{tag}") for child in elem))


def _unwrap(children):
    # XES 2.0 wraps list members in <values>
    if len(children) == 1 and children[0].kind == "values":
        return children[0].children
    return children


class _EventBuilder:
    def __init__(self, path, warnings):
        self.path = path
        self.warnings = warnings
        self.aspects = {}
        self.seen_keys = set()

    def bad(self, message):
        return errors.BadUncertaintyStructure(message, self.path)

    def set(self, aspect, value):
        if aspect in self.aspects:
            raise self.bad(f"{aspect} annotated more than once")
        self.aspects[aspect] = value

    def discrete_strong(self, attr):
        labels = []
        for child in attr.children:
            if child.key == ACTIVITY_KEY and child.kind == "string":
                labels.append(child.value)
            elif child.key == INDETERMINACY and child.kind in ("bool", "boolean"):
                if child.value:
                    self.set("indeterminacy", STRONG_INDETERMINATE)
            else:
                raise self.bad(f"unexpected <{child.kind} key={child.key!r}> in {DISCRETE_STRONG}")
        if labels:
            if len(set(labels)) != len(labels):
                raise self.bad(f"repeated label in {DISCRETE_STRONG}")
            self.set("activity", StrongSet(labels))
        elif not attr.children:
            raise self.bad(f"empty {DISCRETE_STRONG} container")

    def discrete_weak(self, attr):
        entries = []
        for child in attr.children:
            if child.key != ENTRY or child.kind != "container":
                raise self.bad(f"{DISCRETE_WEAK} may only hold {ENTRY} containers")
            label = indet = prob = None
            for part in child.children:
                if part.key == PROBABILITY and part.kind in ("double", "float"):
                    if prob is not None:
                        raise self.bad(f"{ENTRY} with two probabilities")
                    prob = part.value
                elif part.key == ACTIVITY_KEY and part.kind == "string" and label is None:
                    label = part.value
                elif part.key == INDETERMINACY and part.kind in ("bool", "boolean") and indet is None:
                    indet = part.value
                else:
                    raise self.bad(f"unexpected <{part.kind} key={part.key!r}> in {ENTRY}")
            if prob is None:
                raise self.bad(f"{ENTRY} without {PROBABILITY}")
            if (label is None) == (indet is None):
                raise self.bad(f"{ENTRY} must hold exactly one of {ACTIVITY_KEY} or {INDETERMINACY}")
            if label is not None:
                entries.append((label, prob))
            elif indet:
                self.set("indeterminacy", WeakIndeterminate(prob))
        if entries:
            self.set("activity", WeakMap(entries))
        elif not attr.children:
            raise self.bad(f"empty {DISCRETE_WEAK} container")

    def continuous_strong(self, attr):
        dates = _unwrap(attr.children)
        if len(dates) != 2 or any(d.kind != "date" for d in dates):
            raise self.bad(f"{CONTINUOUS_STRONG} must hold exactly two dates")
        lo, hi = dates[0].value, dates[1].value
        if lo > hi:
            self.warnings.append((self.path, "UnsortedInterval",
                                  f"{CONTINUOUS_STRONG} bounds given in descending order"))
            lo, hi = hi, lo
        self.set("timestamp", StrongInterval(lo, hi))

    def continuous_weak(self, attr):
        name = params = None
        for child in attr.children:
            if child.key == DENSITY_FUNCTION and child.kind == "string" and name is None:
                name = child.value
            elif child.key == FUNCTION_PARAMETERS and child.kind == "list" and params is None:
                params = _unwrap(child.children)
            else:
                raise self.bad(f"unexpected <{child.kind} key={child.key!r}> in {CONTINUOUS_WEAK}")
        if name is None or params is None:
            raise self.bad(f"{CONTINUOUS_WEAK} needs {DENSITY_FUNCTION} and {FUNCTION_PARAMETERS}")
        if name not in DENSITY_PARAMS:
            raise errors.UnknownDensityFunction(f"{self.path}: unknown density function {name!r}")
        given = {}
        for p in params:
            if p.kind not in ("double", "float", "int") or not p.key or p.key in given:
                raise errors.BadDensityParams(f"{self.path}: bad density parameter <{p.kind} key={p.key!r}>")
            given[p.key] = float(p.value)
        wanted = DENSITY_PARAMS[name]
        if set(given) != set(wanted):
            raise errors.BadDensityParams(
                f"{self.path}: {name} needs parameters {list(wanted)}, got {sorted(given)}")
        # checked construction: density errors are structural, not deferred to validation
        from .model import _checking
        token = _checking.set(True)
        try:
            spec = DensitySpec(name, [(k, given[k]) for k in wanted])
        except errors.BadDensityParams as exc:
            raise errors.BadDensityParams(f"{self.path}: {exc}") from None
        finally:
            _checking.reset(token)
        self.set("timestamp", WeakDensity(spec))


def _build_event(attrs, case_id, auto_id, path, warnings) -> UncertainEvent:
    b = _EventBuilder(path, warnings)
    event_id = None
    label = ts = None
    extras = []
    handlers = {
        DISCRETE_STRONG: ("container", b.discrete_strong),
        DISCRETE_WEAK: ("container", b.discrete_weak),
        CONTINUOUS_STRONG: ("list", b.continuous_strong),
        CONTINUOUS_WEAK: ("container", b.continuous_weak),
    }
    for attr in attrs:
        key = attr.key
        if key in handlers:
            kind, handler = handlers[key]
            if attr.kind != kind:
                raise b.bad(f"{key} must be a <{kind}>, got <{attr.kind}>")
            if key in b.seen_keys:
                raise b.bad(f"{key} appears twice")
            b.seen_keys.add(key)
            handler(attr)
        elif key == INDETERMINACY and attr.kind in ("bool", "boolean"):
            if attr.value:
                b.set("indeterminacy", STRONG_INDETERMINATE)
        elif key == ACTIVITY_KEY and attr.kind == "string" and label is None:
            label = attr.value
        elif key == TIMESTAMP_KEY and attr.kind == "date" and ts is None:
            ts = attr.value
        elif key == ID_KEY and attr.kind in ("id", "string") and event_id is None:
            event_id = attr.value
        elif key in UNCERTAINTY_KEYS:
            raise b.bad(f"{key} is not valid directly on an event")
        else:
            extras.append(attr)

    activity = b.aspects.get("activity")
    if activity is None:
        if label is None:
            raise errors.MissingActivity(f"no {ACTIVITY_KEY} and no uncertain activity", path)
        activity = StrongSet([label])
    timestamp = b.aspects.get("timestamp")
    if timestamp is None:
        if ts is None:
            raise errors.MissingTimestamp(f"no {TIMESTAMP_KEY} and no uncertain timestamp", path)
        timestamp = Certain(ts)
    return UncertainEvent(
        event_id if event_id is not None else auto_id,
        case_id,
        activity,
        timestamp,
        b.aspects.get("indeterminacy", DETERMINATE),
        tuple(extras),
        wire_fallback=(label, ts),
    )


def open_source(source):
    """Return a binary stream for a path, bytes, or file object; gunzips by magic bytes."""
    if isinstance(source, (bytes, bytearray)):
        stream = io.BytesIO(source)
    elif isinstance(source, (str, os.PathLike)):
        stream = open(source, "rb")
    elif not hasattr(source, "read"):
        raise TypeError(f"cannot read XES from {type(source).__name__}")
    else:
        stream = source
        if isinstance(stream, io.TextIOBase):
            stream = getattr(stream, "buffer", None) or io.BytesIO(stream.read().encode("utf-8"))
    if not hasattr(stream, "peek"):
        stream = io.BufferedReader(stream) if isinstance(stream, io.RawIOBase) else _Peekable(stream)
    if stream.peek(2)[:2] == b"\x1f\x8b":
        return gzip.GzipFile(fileobj=stream)
    return stream


class _Peekable(io.RawIOBase):
    def __init__(self, raw):
        self._raw = raw
        self._buf = b""

    def readable(self):
        return True

    def peek(self, n=1):
        if len(self._buf) < n:
            self._buf += self._raw.read(n - len(self._buf)) or b""
        return self._buf

    def read(self, n=-1):
        if n is None or n < 0:
            data, self._buf = self._buf + (self._raw.read() or b""), b""
            return data
        if self._buf:
            data, self._buf = self._buf[:n], self._buf[n:]
            return data
        return self._raw.read(n)

    def readinto(self, b):
        data = self.read(len(b))
        b[:len(data)] = data
        return len(data)


class XesReader:
    """Single-pass reader. Iterate for traces; log-level data fills in as it streams.

    ``xml_attributes``, ``log_attributes``, ``header`` and ``warnings`` are
    complete once iteration has finished.
    """

    def __init__(self, source):
        self.source = source
        self.xml_attributes = []
        self.log_attributes = []
        self.header = []
        self.warnings = []

    def __iter__(self):
        owned = isinstance(self.source, (str, os.PathLike))
        stream = open_source(self.source)
        try:
            yield from self._traces(stream)
        except ET.ParseError as exc:
            raise errors.MalformedXml(str(exc)) from None
        except (EOFError, OSError) as exc:
            raise errors.MalformedXml(f"unreadable input: {exc}") from None
        finally:
            if owned:
                stream.close()

    def _traces(self, stream):
        stack = []
        root_tag = None
        n_events = 0
        n_traces = 0
        pending_events = []
        for kind, payload in ET.iterparse(stream, events=("start", "end", "start-ns")):
            if kind == "start-ns":
                prefix, uri = payload
                self.xml_attributes.append(("xmlns:" + prefix if prefix else "xmlns", uri))
                continue
            elem = payload
            tag = _local(elem.tag)
            if kind == "start":
                if not stack:
                    root_tag = tag
                    if tag not in ("log", "trace"):
                        raise errors.MalformedXml(f"root element must be <log> or <trace>, got <{tag}>")
                    if tag == "log":
                        self.xml_attributes.extend(elem.attrib.items())
                stack.append(elem)
                continue

            stack.pop()
            parent_tag = _local(stack[-1].tag) if stack else None
            trace_depth = 1 if root_tag == "log" else 0
            if tag == "event" and parent_tag == "trace" and len(stack) == trace_depth + 1:
                n_events += 1
                pending_events.append((n_events, elem))
            elif tag == "trace" and len(stack) == trace_depth:
                n_traces += 1
                yield self._trace(elem, pending_events, n_traces)
                pending_events = []
                if stack:
                    stack[-1].remove(elem)
            elif root_tag == "log" and len(stack) == 1:
                path = f"log/{tag}"
                (self.log_attributes if tag in ATTRIBUTE_TAGS else self.header).append(
                    _to_element(elem, path))
                stack[-1].remove(elem)

    def _trace(self, elem, numbered_events, n_trace):
        index = n_trace - 1
        case_id = None
        trace_attrs = []
        for child in elem:
            tag = _local(child.tag)
            if tag == "event":
                continue
            attr = _to_element(child, f"trace[{index}]")
            if (case_id is None and isinstance(attr, XesAttribute)
                    and attr.key == ACTIVITY_KEY and attr.kind == "string"):
                case_id = attr.value
            else:
                trace_attrs.append(attr)
        if case_id is None:
            case_id = auto_case_id(n_trace)
        tpath = f"trace[{index}]({case_id})"
        events = []
        for ei, (n, ev_elem) in enumerate(numbered_events):
            path = f"{tpath}/event[{ei}]"
            attrs = [_to_attribute(c, path) for c in ev_elem if _local(c.tag) in ATTRIBUTE_TAGS]
            with unchecked():
                events.append(_build_event(attrs, case_id, auto_event_id(n), path, self.warnings))
        with unchecked():
            return UncertainTrace(case_id, tuple(events), tuple(trace_attrs))


def parse_log(source) -> UncertainLog:
    """Read a whole document (path, bytes, or binary/text stream) into a log.

    Structural problems raise :class:`~uncertain_xes.errors.XesFormatError`
    subclasses. Value-level problems (probability mass above 1, duplicate
    ids, ...) are kept in the model for :func:`validate_log` to report.
    """
    reader = XesReader(source)
    traces = list(reader)
    with unchecked():
        return UncertainLog(traces, reader.log_attributes, reader.xml_attributes,
                            reader.header, parse_warnings=reader.warnings)


def parse_string(text: str) -> UncertainLog:
    return parse_log(text.encode("utf-8"))


def iter_traces(source):
    """Yield traces one at a time without keeping earlier ones."""
    return iter(XesReader(source))


# --------------------------------------------------------------------------
# writing

def format_double(x: float) -> str:
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def _format_value(kind, value) -> str:
    if kind == "date":
        return format_timestamp(value) if isinstance(value, datetime) else str(value)
    if kind in ("bool", "boolean"):
        return "true" if value else "false"
    if kind in ("double", "float"):
        return format_double(value)
    return str(value)


def _q(text: str) -> str:
    return '"' + escape(text, {'"': "&quot;", "\n": "&#10;", "\r": "&#13;", "\t": "&#9;"}) + '"'


def _write_attribute(out, attr: XesAttribute, depth: int):
    pad = "\t" * depth
    head = f"{pad}<{attr.kind}"
    if attr.key is not None:
        head += f" key={_q(attr.key)}"
    if attr.kind not in COMPOSITE_TAGS and attr.value is not None:
        head += f" value={_q(_format_value(attr.kind, attr.value))}"
    if not attr.children:
        out.write(head + "/>\n")
        return
    out.write(head + ">\n")
    for child in attr.children:
        _write_node(out, child, depth + 1)
    out.write(f"{pad}</{attr.kind}>\n")


def _write_node(out, node, depth):
    if isinstance(node, XesAttribute):
        _write_attribute(out, node, depth)
        return
    pad = "\t" * depth
    attrs = "".join(f" {k}={_q(v)}" for k, v in node.attrib)
    if not node.children:
        out.write(f"{pad}<{node.tag}{attrs}/>\n")
        return
    out.write(f"{pad}<{node.tag}{attrs}>\n")
    for child in node.children:
        _write_node(out, child, depth + 1)
    out.write(f"{pad}</{node.tag}>\n")


_EARLIEST = datetime(1, 1, 2, tzinfo=timezone.utc)
_LATEST = datetime(9999, 12, 30, tzinfo=timezone.utc)


def representative_label(activity) -> str:
    """Fallback ``concept:name``: smallest label of a set, most probable entry of a map."""
    if isinstance(activity, StrongSet):
        return min(activity.labels)
    return min(activity.entries, key=lambda e: (-e[1], e[0]))[0]


def representative_time(timestamp, epoch: datetime) -> datetime:
    """Fallback ``time:timestamp``: interval midpoint, or the density mean on the day axis."""
    if isinstance(timestamp, StrongInterval):
        return timestamp.midpoint
    try:
        return from_days(timestamp.spec.mean, epoch)
    except OverflowError:
        # means far off the calendar still need some valid date on the wire
        return _EARLIEST if timestamp.spec.mean < 0 else _LATEST


def _fallbacks(ev: UncertainEvent, epoch):
    wire_label, wire_ts = ev.wire_fallback or (None, None)
    label = wire_label if wire_label in ev.activity.support else representative_label(ev.activity)
    ts = ev.timestamp
    if wire_ts is not None and (isinstance(ts, WeakDensity) or ts.min <= wire_ts <= ts.max):
        time = wire_ts
    else:
        time = representative_time(ts, epoch)
    return label, time


def uncertainty_attributes(ev: UncertainEvent) -> list[XesAttribute]:
    """The extension attributes that encode ``ev``'s uncertain aspects."""
    out = []
    strong, weak = [], []
    act, ind, ts = ev.activity, ev.indeterminacy, ev.timestamp
    if isinstance(act, StrongSet) and len(act.labels) > 1:
        strong.extend(XesAttribute("string", ACTIVITY_KEY, label) for label in act.support)
    if isinstance(ind, StrongIndeterminate):
        strong.append(XesAttribute("bool", INDETERMINACY, True))
    if isinstance(act, WeakMap):
        for label, p in act.entries:
            weak.append(XesAttribute("container", ENTRY, None, (
                XesAttribute("string", ACTIVITY_KEY, label),
                XesAttribute("double", PROBABILITY, float(p)),
            )))
    if isinstance(ind, WeakIndeterminate):
        weak.append(XesAttribute("container", ENTRY, None, (
            XesAttribute("bool", INDETERMINACY, True),
            XesAttribute("double", PROBABILITY, float(ind.p_not_occurred)),
        )))
    if strong:
        out.append(XesAttribute("container", DISCRETE_STRONG, None, tuple(strong)))
    if weak:
        out.append(XesAttribute("container", DISCRETE_WEAK, None, tuple(weak)))
    if isinstance(ts, StrongInterval) and not ts.is_certain:
        out.append(XesAttribute("list", CONTINUOUS_STRONG, None, (
            XesAttribute("date", TIMESTAMP_KEY, ts.min),
            XesAttribute("date", TIMESTAMP_KEY, ts.max),
        )))
    elif isinstance(ts, WeakDensity):
        out.append(XesAttribute("container", CONTINUOUS_WEAK, None, (
            XesAttribute("string", DENSITY_FUNCTION, ts.spec.kind),
            XesAttribute("list", FUNCTION_PARAMETERS, None, tuple(
                XesAttribute("double", name, float(value)) for name, value in ts.spec.params)),
        )))
    return out


def event_attributes(ev: UncertainEvent, auto_id: str | None, epoch) -> list[XesAttribute]:
    label, time = _fallbacks(ev, epoch)
    attrs = [XesAttribute("string", ACTIVITY_KEY, label), XesAttribute("date", TIMESTAMP_KEY, time)]
    if ev.event_id != auto_id:
        attrs.append(XesAttribute("id", ID_KEY, ev.event_id))
    attrs.extend(ev.extra_attributes)
    attrs.extend(uncertainty_attributes(ev))
    return attrs


def write_trace(out, trace: UncertainTrace, first_event_number: int, epoch=None, depth=1):
    """Write one ``<trace>``; events are numbered from ``first_event_number`` for id elision."""
    ep = trace_epoch(trace, epoch)
    pad = "\t" * depth
    out.write(f"{pad}<trace>\n")
    _write_attribute(out, XesAttribute("string", ACTIVITY_KEY, trace.case_id), depth + 1)
    for attr in trace.trace_attributes:
        _write_node(out, attr, depth + 1)
    for i, ev in enumerate(trace.events):
        out.write(f"{pad}\t<event>\n")
        for attr in event_attributes(ev, auto_event_id(first_event_number + i), ep):
            _write_attribute(out, attr, depth + 2)
        out.write(f"{pad}\t</event>\n")
    out.write(f"{pad}</trace>\n")


def serialize_log(log: UncertainLog, writer=None, *, epoch: datetime | None = None):
    """Write ``log`` as XES text to ``writer``; without a writer, return the text.

    ``epoch`` overrides every trace's day-axis origin (used for the fallback
    timestamp of density-valued events).
    """
    out = writer if writer is not None else io.StringIO()
    xml_attrs = list(log.xml_attributes) or [("xes.version", "1.0")]
    attrs = "".join(f" {k}={_q(v)}" for k, v in xml_attrs)
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(f"<log{attrs}>\n")
    for node in log.header:
        _write_node(out, node, 1)
    for attr in log.log_attributes:
        _write_node(out, attr, 1)
    n = 1
    for trace in log.traces:
        write_trace(out, trace, n, epoch)
        n += len(trace.events)
    out.write("</log>\n")
    if writer is None:
        return out.getvalue()
    return None


def dumps(log: UncertainLog, **kw) -> str:
    return serialize_log(log, **kw)


def write_log(log: UncertainLog, path, **kw):
    """Write to ``path``; ``.gz`` suffix selects gzip compression."""
    path = os.fspath(path)
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "wt", encoding="utf-8", newline="\n") as fh:
        serialize_log(log, fh, **kw)


def roundtrip_check(source) -> bool:
    """True iff parse(serialize(parse(doc))) equals parse(doc)."""
    first = parse_log(source)
    second = parse_string(dumps(first))
    return first == second


# --------------------------------------------------------------------------
# structural comparison of documents

def _canon_value(kind, raw):
    if raw is None:
        return None
    try:
        value = _typed_value(kind, raw, "")
    except errors.BadAttributeValue:
        return raw
    if isinstance(value, datetime):
        return value.timestamp()
    return value


_ORDERED = frozenset(["list", "values", "trace", "log"])


def _canon(elem):
    tag = _local(elem.tag)
    attrs = []
    for k, v in sorted(elem.attrib.items()):
        attrs.append((k, _canon_value(tag, v) if k == "value" else v))
    children = [_canon(c) for c in elem]
    if tag not in _ORDERED:
        children.sort(key=repr)
    return (tag, tuple(attrs), tuple(children))


def _as_log_root(root):
    if _local(root.tag) == "trace":
        wrapper = ET.Element("log")
        wrapper.append(root)
        return wrapper
    return root


def documents_equivalent(a, b, *, ignore_root_attributes: bool = True) -> bool:
    """Compare two XES documents by elements, keys and typed values.

    Whitespace and attribute order within events/containers are ignored;
    list members and trace/event order are significant.
    """
    ra = _as_log_root(ET.parse(open_source(a)).getroot())
    rb = _as_log_root(ET.parse(open_source(b)).getroot())
    if ignore_root_attributes:
        ra.attrib.clear()
        rb.attrib.clear()
    return _canon(ra) == _canon(rb)


def uncertainty_triples(source) -> list:
    """Sorted (key, kind, value) triples of every extension attribute in a document."""
    root = ET.parse(open_source(source)).getroot()
    found = []

    def walk(elem, inside):
        tag = _local(elem.tag)
        key = elem.get("key")
        active = inside or key in UNCERTAINTY_KEYS
        if active:
            found.append((key, tag, _canon_value(tag, elem.get("value"))))
        for child in elem:
            walk(child, active)

    walk(root, False)
    return sorted(found, key=repr)
