"""Timestamps: ISO-8601 parsing/formatting and the real-valued day axis."""
from __future__ import annotations

import re
from datetime import datetime, timedelta, timezone

UTC = timezone.utc
UNIX_EPOCH = datetime(1970, 1, 1, tzinfo=UTC)
DAY_SECONDS = 86400.0

_ISO = re.compile(
    r"^(?P<date>\d{4}-\d{2}-\d{2})"
    r"(?:[T ](?P<h>\d{2}):(?P<m>\d{2})(?::(?P<s>\d{2})(?:[.,](?P<frac>\d+))?)?)?"
    r"\s*(?P<tz>Z|z|[+-]\d{2}(?::?\d{2})?)?$"
)


def parse_timestamp(text: str) -> datetime:
    """Parse an XES date value. Offset-less values are taken as UTC.

    Sub-millisecond digits are dropped (truncation, not rounding).
    """
    m = _ISO.match(text.strip())
    if not m:
        raise ValueError(f"not an ISO-8601 timestamp: {text!r}")
    y, mo, d = (int(x) for x in m.group("date").split("-"))
    frac = (m.group("frac") or "")[:3].ljust(3, "0")
    tz = m.group("tz")
    if tz is None or tz in "Zz":
        tzinfo = UTC
    else:
        sign = -1 if tz[0] == "-" else 1
        digits = tz[1:].replace(":", "")
        hours, minutes = int(digits[:2]), int(digits[2:4] or 0)
        tzinfo = timezone(sign * timedelta(hours=hours, minutes=minutes))
    return datetime(
        y, mo, d,
        int(m.group("h") or 0), int(m.group("m") or 0), int(m.group("s") or 0),
        int(frac) * 1000, tzinfo=tzinfo,
    )


def normalize(dt: datetime) -> datetime:
    """Attach UTC to naive values and truncate to millisecond precision."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=UTC)
    if dt.microsecond % 1000:
        dt = dt.replace(microsecond=dt.microsecond - dt.microsecond % 1000)
    return dt


def format_timestamp(dt: datetime) -> str:
    # milliseconds only when present, so listing-style values survive verbatim
    dt = normalize(dt)
    spec = "milliseconds" if dt.microsecond else "seconds"
    return dt.isoformat(timespec=spec)


def midnight_utc(dt: datetime) -> datetime:
    dt = normalize(dt).astimezone(UTC)
    return dt.replace(hour=0, minute=0, second=0, microsecond=0)


def to_days(dt: datetime, epoch: datetime) -> float:
    return (normalize(dt) - normalize(epoch)).total_seconds() / DAY_SECONDS


def from_days(days: float, epoch: datetime) -> datetime:
    ms = round(days * DAY_SECONDS * 1000.0)
    return (normalize(epoch) + timedelta(milliseconds=ms)).astimezone(UTC)


_DURATION = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([dhms]|ms)\s*$")
_UNIT_SECONDS = {"d": 86400, "h": 3600, "m": 60, "s": 1, "ms": 0.001}


def parse_duration(text: str) -> timedelta:
    """``'3d'``, ``'12h'``, ``'90m'``, ``'30s'``, ``'500ms'``."""
    m = _DURATION.match(text)
    if not m:
        raise ValueError(f"bad duration {text!r} (expected e.g. 3d, 12h, 30m)")
    return timedelta(seconds=float(m.group(1)) * _UNIT_SECONDS[m.group(2)])
