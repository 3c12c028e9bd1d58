"""Discrete-event simulation of the EEE interface and the coalescer tandem.

Both machines are deterministic given their input stream, so instead of a
general event queue each run is a single forward walk over the arrival
array in integer nanoseconds.  The walks live in numba-jitted kernels; the
wrappers turn configs into ns quantities and package SimStats.

Interface state machine (per frame i, with `free` = instant the queue last
drained and the hysteresis timer started):

* arrival at or before `free`: frame was queued, service starts at `free`.
* idle gap 0 < a - free <= h*: hysteresis aborted, service starts at `a`.
* idle gap > h*: the interface slept.  Sleep transition occupies
  [free+h*, free+h*+Ts]; low-power idle lasts until max(sleep end, a + d);
  the wake transition takes Tw more; service then starts.  Arrivals during
  the sleep or wake transitions just queue (the walk reaches them with
  a <= free later on).

Ties follow arrival-first ordering: an arrival exactly at hysteresis expiry
cancels the sleep, an arrival exactly at a transmission completion keeps the
interface active.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit
from scipy import stats as _scipy_stats

from .types import (
    CoalescerConfig,
    CoalescerStats,
    DomainError,
    EeeConfig,
    LinkConfig,
    ReplicationSummary,
    SimStats,
    TrafficSpec,
    ns_from_seconds,
)
from .traffic import ArrivalStream, realize


@njit(cache=True)
def _nic_walk(arr, svc, h_ns, ts_ns, tw_ns, d_ns):  # pragma: no cover - jitted
    n = arr.size
    starts = np.empty(n, dtype=np.int64)
    t_active = np.int64(0)
    t_hyst = np.int64(0)
    t_sleep = np.int64(0)
    t_lpi = np.int64(0)
    t_wake = np.int64(0)
    lpi_cycles = 0
    aborts_after_warmup = 0
    free = np.int64(0)  # queue empty since t=0, hysteresis timer armed
    for i in range(n):
        a = arr[i]
        if a <= free:
            start = free
        else:
            gap = a - free
            if gap <= h_ns:
                t_hyst += gap
                if lpi_cycles > 0:
                    aborts_after_warmup += 1
                start = a
            else:
                t_hyst += h_ns
                sleep_end = free + h_ns + ts_ns
                t_sleep += ts_ns
                wake_start = a + d_ns
                if wake_start < sleep_end:
                    wake_start = sleep_end
                t_lpi += wake_start - sleep_end
                t_wake += tw_ns
                lpi_cycles += 1
                start = wake_start + tw_ns
        starts[i] = start
        free = start + svc[i]
        t_active += svc[i]
    return starts, t_active, t_hyst, t_sleep, t_lpi, t_wake, lpi_cycles, aborts_after_warmup


@njit(cache=True)
def _coalescer_walk(arr, svc, b_ns):  # pragma: no cover - jitted
    n = arr.size
    releases = np.empty(n, dtype=np.int64)
    bunches = 0
    t_accumulating = np.int64(0)
    t_draining = np.int64(0)
    i = 0
    end = np.int64(0)
    while i < n:
        first = arr[i]
        t = first + b_ns
        bunches += 1
        t_accumulating += b_ns
        j = i
        # drain at line rate; frames arriving before their release slot join
        while j < n and arr[j] <= t:
            releases[j] = t
            t += svc[j]
            j += 1
        t_draining += t - (first + b_ns)
        end = t
        i = j
    return releases, bunches, t_accumulating, t_draining, end


def _service_ns(sizes_bits: np.ndarray, capacity: float) -> np.ndarray:
    svc = np.rint(sizes_bits.astype(np.float64) * 1e9 / capacity).astype(np.int64)
    return np.maximum(svc, 1)


def _to_stats(
    arrivals_ns: np.ndarray,
    starts: np.ndarray,
    totals: tuple,
    link: LinkConfig,
    coalescer: CoalescerStats | None = None,
    wait_origin_ns: np.ndarray | None = None,
) -> SimStats:
    t_active, t_hyst, t_sleep, t_lpi, t_wake, lpi_cycles, aborts = totals
    total_ns = int(t_active + t_hyst + t_sleep + t_lpi + t_wake)
    origin = arrivals_ns if wait_origin_ns is None else wait_origin_ns
    delays = (starts - origin).astype(np.float64) / 1e9
    total_s = total_ns / 1e9
    rho_lpi = (int(t_lpi) / total_ns) if total_ns else 0.0
    return SimStats(
        total_time=total_s,
        time_active=int(t_active) / 1e9,
        time_hysteresis=int(t_hyst) / 1e9,
        time_sleep_trans=int(t_sleep) / 1e9,
        time_lpi=int(t_lpi) / 1e9,
        time_wake_trans=int(t_wake) / 1e9,
        lpi_cycles=int(lpi_cycles),
        failed_hysteresis_count=int(aborts),
        frames_served=int(starts.size),
        frame_delays=delays,
        rho_lpi_measured=rho_lpi,
        sigma_measured=1.0 - (1.0 - link.sigma_lpi) * rho_lpi,
        coalescer=coalescer,
    )


def run_nic_sim(arrivals: ArrivalStream, eee: EeeConfig, link: LinkConfig) -> SimStats:
    """Simulate the interface alone on the given arrival stream."""
    if len(arrivals) == 0:
        raise DomainError("arrival stream is empty")
    svc = _service_ns(arrivals.sizes_bits, link.capacity)
    starts, *totals = _nic_walk(
        arrivals.timestamps_ns,
        svc,
        np.int64(ns_from_seconds(eee.hysteresis)),
        np.int64(ns_from_seconds(link.t_sleep)),
        np.int64(ns_from_seconds(link.t_wake)),
        np.int64(ns_from_seconds(eee.wake_delay)),
    )
    return _to_stats(arrivals.timestamps_ns, starts, tuple(totals), link)


def run_tandem_sim(
    arrivals: ArrivalStream,
    coal: CoalescerConfig,
    eee: EeeConfig,
    link: LinkConfig,
) -> SimStats:
    """Simulate coalescer + interface; waits span the whole tandem."""
    if len(arrivals) == 0:
        raise DomainError("arrival stream is empty")
    svc = _service_ns(arrivals.sizes_bits, link.capacity)
    releases, bunches, t_acc, t_drain, coal_end = _coalescer_walk(
        arrivals.timestamps_ns, svc, np.int64(ns_from_seconds(coal.bunch))
    )
    coal_stats = CoalescerStats(
        bunches=int(bunches),
        time_empty=int(coal_end - t_acc - t_drain) / 1e9,
        time_accumulating=int(t_acc) / 1e9,
        time_draining=int(t_drain) / 1e9,
        total_time=int(coal_end) / 1e9,
    )
    nic_arrivals = releases + np.int64(ns_from_seconds(coal.propagation))
    starts, *totals = _nic_walk(
        nic_arrivals,
        svc,
        np.int64(ns_from_seconds(eee.hysteresis)),
        np.int64(ns_from_seconds(link.t_sleep)),
        np.int64(ns_from_seconds(link.t_wake)),
        np.int64(ns_from_seconds(eee.wake_delay)),
    )
    return _to_stats(
        nic_arrivals,
        starts,
        tuple(totals),
        link,
        coalescer=coal_stats,
        wait_origin_ns=arrivals.timestamps_ns,
    )


def departures(arrivals: ArrivalStream, stats: SimStats) -> ArrivalStream:
    """Departure-side trace (transmission-start timestamps) of a NIC run."""
    starts = arrivals.timestamps_ns + np.round(stats.frame_delays * 1e9).astype(np.int64)
    return ArrivalStream(starts, arrivals.sizes_bits.copy())


def coalesce_stream(
    arrivals: ArrivalStream, coal: CoalescerConfig, link: LinkConfig
) -> ArrivalStream:
    """Transform a trace into the coalescer's departure-side trace.

    Each bunch is released `bunch` seconds after its first frame and drains
    at the link's line rate; `propagation` shifts every departure by a
    constant.  With bunch = 0 a trace whose frames are already spaced at
    line rate (such as any simulator departure trace) passes through
    unchanged; tighter spacing gets serialized to line rate, as a physical
    drain port would.
    """
    if len(arrivals) == 0:
        raise DomainError("arrival stream is empty")
    svc = _service_ns(arrivals.sizes_bits, link.capacity)
    releases, *_ = _coalescer_walk(
        arrivals.timestamps_ns, svc, np.int64(ns_from_seconds(coal.bunch))
    )
    out = releases + np.int64(ns_from_seconds(coal.propagation))
    return ArrivalStream(out, arrivals.sizes_bits.copy())


def visible_lpi_events(
    arrivals: ArrivalStream,
    stats: SimStats,
    eee: EeeConfig,
    coal: CoalescerConfig | None = None,
) -> int:
    """LPI entries that fall inside the departure-trace window.

    The interface arms its hysteresis timer at t = 0 with an empty queue, so
    it may sleep once before serving the very first frame.  That event
    precedes the first departure and cannot be recovered from a trace;
    trace-side estimators must be fed the count returned here rather than
    SimStats.lpi_cycles.
    """
    first_ns = int(arrivals.timestamps_ns[0])
    if coal is not None:
        first_ns += ns_from_seconds(coal.bunch) + ns_from_seconds(coal.propagation)
    warm_up = 1 if first_ns > ns_from_seconds(eee.hysteresis) else 0
    return stats.lpi_cycles - warm_up


def metrics(stats: SimStats) -> dict[str, float]:
    """Scalar metrics used by replicate() and the sweep CSVs."""
    waits = stats.frame_delays
    span = stats.total_time if stats.total_time > 0 else 1.0
    return {
        "rho_lpi": stats.rho_lpi_measured,
        "sigma": stats.sigma_measured,
        "mean_wait_s": float(waits.mean()) if waits.size else 0.0,
        "p95_wait_s": float(np.percentile(waits, 95)) if waits.size else 0.0,
        "lpi_events_per_s": stats.lpi_cycles / span,
    }


def simulate_once(
    traffic: TrafficSpec,
    n_frames: int,
    eee: EeeConfig,
    link: LinkConfig,
    seed: int,
    coal: CoalescerConfig | None = None,
) -> SimStats:
    """Realize the traffic spec with `seed` and run the right simulator."""
    stream = realize(traffic, n_frames, seed)
    if coal is None:
        return run_nic_sim(stream, eee, link)
    return run_tandem_sim(stream, coal, eee, link)


def replicate(
    traffic: TrafficSpec,
    n_frames: int,
    eee: EeeConfig,
    link: LinkConfig,
    n_reps: int,
    base_seed: int,
    coal: CoalescerConfig | None = None,
) -> ReplicationSummary:
    """Run n_reps independent replications (seeds base_seed+i) and summarize.

    Per-metric means come with 95% Student-t confidence half-widths;
    deterministic traffic yields zero-width intervals.
    """
    if n_reps < 2:
        raise DomainError(f"need at least 2 replications for a CI, got {n_reps}")
    seeds = tuple(base_seed + i for i in range(n_reps))
    rows = [metrics(simulate_once(traffic, n_frames, eee, link, s, coal)) for s in seeds]
    names = rows[0].keys()
    mean: dict[str, float] = {}
    ci: dict[str, float] = {}
    tcrit = float(_scipy_stats.t.ppf(0.975, n_reps - 1))
    for name in names:
        vals = np.array([r[name] for r in rows], dtype=np.float64)
        mean[name] = float(vals.mean())
        if np.all(vals == vals[0]):
            # identical samples have zero variance; np.std would report a
            # rounding-level residual from its mean subtraction
            ci[name] = 0.0
            continue
        sem = float(vals.std(ddof=1)) / math.sqrt(n_reps)
        ci[name] = tcrit * sem
    return ReplicationSummary(n_reps=n_reps, seeds=seeds, mean=mean, ci95_halfwidth=ci)
