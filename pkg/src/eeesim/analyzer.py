"""Reconstruct low-power-idle statistics from a departure-side frame trace.

Mirrors the hardware-counter methodology: the NIC reports how many times it
entered low-power idle; the trace shows inter-departure gaps.  Every idle
visit stretches one gap by hysteresis + sleep + idle + wake, so the
`lpi_event_count` largest gaps are the idle events, and subtracting the
fixed overhead h* + Ts + Tw + d from each leaves that event's idle time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .types import DomainError, EeeConfig, LinkConfig
from .traffic import ArrivalStream


@dataclass(frozen=True)
class LpiEstimate:
    """Idle statistics recovered from a trace."""

    lpi_events_per_s: float
    mean_lpi_duration: float
    time_in_lpi_pct: float


def estimate_lpi(
    trace: ArrivalStream,
    link: LinkConfig,
    eee: EeeConfig,
    lpi_event_count: int,
) -> LpiEstimate:
    """Estimate idle time from departures plus the NIC's idle-entry count.

    Per-event idle time is gap - (h* + Ts + Tw + d), clamped at zero (a gap
    of exactly the overhead is a zero-length idle visit).  Fractions are
    relative to the trace's own span, so shifting all timestamps by a
    constant changes nothing.
    """
    if len(trace) == 0:
        raise DomainError("trace is empty")
    if lpi_event_count < 0:
        raise DomainError(f"event count must be >= 0, got {lpi_event_count}")
    gaps = np.diff(trace.timestamps_ns)
    if lpi_event_count > gaps.size:
        raise DomainError(
            f"{lpi_event_count} events but only {gaps.size} inter-departure gaps"
        )
    span_s = trace.duration_s
    if lpi_event_count == 0 or span_s <= 0:
        return LpiEstimate(0.0, 0.0, 0.0)
    overhead_ns = round((eee.hysteresis + link.t_sleep + link.t_wake + eee.wake_delay) * 1e9)
    largest = np.sort(gaps)[-lpi_event_count:]
    lpi_ns = np.maximum(largest - overhead_ns, 0)
    total_lpi_s = float(lpi_ns.sum()) / 1e9
    return LpiEstimate(
        lpi_events_per_s=lpi_event_count / span_s,
        mean_lpi_duration=total_lpi_s / lpi_event_count,
        time_in_lpi_pct=min(total_lpi_s / span_s, 1.0),
    )
