"""ISO-8601 duration parsing and canonical formatting.

Only fixed-length components are supported (weeks, days, hours, minutes,
seconds). Year and month components are calendar-dependent and rejected, which
matches the day-time timer subset the engine executes.
"""

from __future__ import annotations

import re
from datetime import timedelta

_DURATION_RE = re.compile(
    r"^P(?:(?P<weeks>\d+)W)?(?:(?P<days>\d+)D)?"
    r"(?:T(?:(?P<hours>\d+)H)?(?:(?P<minutes>\d+)M)?"
    r"(?:(?P<seconds>\d+(?:\.\d+)?)S)?)?$"
)

_CALENDAR_RE = re.compile(r"^P\d+[YM]|^P(?:\d+W)?(?:\d+D)?\d+[YM]")


def parse_duration(text: str) -> timedelta:
    """Parse an ISO-8601 duration like ``P14D`` or ``PT0.2S``.

    Raises ValueError for malformed input and for year/month components.
    """
    text = text.strip()
    if not text.startswith("P"):
        raise ValueError(f"not an ISO-8601 duration: {text!r}")
    if _CALENDAR_RE.match(text):
        raise ValueError(f"year/month duration components are not supported: {text!r}")
    m = _DURATION_RE.match(text)
    if not m or not any(m.groupdict().values()):
        raise ValueError(f"not an ISO-8601 duration: {text!r}")
    weeks = int(m.group("weeks") or 0)
    days = int(m.group("days") or 0)
    hours = int(m.group("hours") or 0)
    minutes = int(m.group("minutes") or 0)
    seconds = float(m.group("seconds") or 0)
    return timedelta(
        weeks=weeks, days=days, hours=hours, minutes=minutes, seconds=seconds
    )


def format_duration(value: timedelta) -> str:
    """Render a timedelta in canonical ISO-8601 form (``P14D``, ``PT1H30M``).

    Weeks are normalized to days so formatting is unique per value.
    """
    if value < timedelta(0):
        raise ValueError("negative durations are not supported")
    days = value.days
    total_seconds = value.seconds
    hours, rem = divmod(total_seconds, 3600)
    minutes, seconds = divmod(rem, 60)
    micro = value.microseconds

    parts = ["P"]
    if days:
        parts.append(f"{days}D")
    time_parts = []
    if hours:
        time_parts.append(f"{hours}H")
    if minutes:
        time_parts.append(f"{minutes}M")
    if seconds or micro:
        if micro:
            frac = f"{seconds + micro / 1_000_000:.6f}".rstrip("0").rstrip(".")
            time_parts.append(f"{frac}S")
        else:
            time_parts.append(f"{seconds}S")
    if time_parts:
        parts.append("T")
        parts.extend(time_parts)
    if len(parts) == 1:
        return "PT0S"
    return "".join(parts)


def duration_ms(value: timedelta) -> int:
    """Whole milliseconds in a duration (sub-millisecond parts truncate)."""
    return int(value.total_seconds() * 1000)
