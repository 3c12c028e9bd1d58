"""Sweep execution and CSV emission for the command-line interface.

A sweep is an ordered list of grid points; points are dispatched to a
process pool when more than one worker is requested, and results are always
emitted in grid order so that the same invocation produces byte-identical
output regardless of --jobs.

Every CSV row starts with a `schema_version` column so downstream consumers
can refuse files they do not understand.  Empty cells stand for "not
applicable" (including NaN results); booleans are written as true/false.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .simulator import (
    departures,
    replicate,
    run_nic_sim,
    run_tandem_sim,
    visible_lpi_events,
)
from .traffic import realize, write_trace
from .types import (
    CoalescerConfig,
    EeeConfig,
    LinkConfig,
    ReplicationSummary,
    TrafficSpec,
)

SCHEMA_VERSION = "1"

MODEL_COLUMNS = [
    "schema_version",
    "model",
    "rho",
    "rate_fps",
    "frame_bits",
    "capacity_bps",
    "t_sleep_s",
    "t_wake_s",
    "sigma_lpi",
    "hysteresis_s",
    "wake_delay_s",
    "bunch_s",
    "rho_lpi",
    "sigma",
    "exp_tlpi_s",
    "exp_n",
    "exp_h_s",
    "exp_cycle_s",
    "mean_wait_s",
    "valid",
    "reason",
]

SIM_COLUMNS = [
    "schema_version",
    "traffic",
    "shape",
    "rho",
    "rate_fps",
    "frame_bits",
    "capacity_bps",
    "t_sleep_s",
    "t_wake_s",
    "sigma_lpi",
    "hysteresis_s",
    "wake_delay_s",
    "bunch_s",
    "propagation_s",
    "n_frames",
    "reps",
    "base_seed",
    "rho_lpi_mean",
    "rho_lpi_ci95",
    "sigma_mean",
    "sigma_ci95",
    "mean_wait_s_mean",
    "mean_wait_s_ci95",
    "p95_wait_s_mean",
    "p95_wait_s_ci95",
    "lpi_events_per_s_mean",
    "lpi_events_per_s_ci95",
    "trace_path",
    "trace_lpi_events",
    "trace_rho_lpi",
]

TUNE_COLUMNS = [
    "schema_version",
    "target",
    "delta",
    "rho",
    "rate_fps",
    "frame_bits",
    "capacity_bps",
    "t_sleep_s",
    "t_wake_s",
    "sigma_lpi",
    "hysteresis_s",
    "wake_delay_s",
    "target_rho_lpi",
    "bunch_exact_s",
    "bunch_approx_s",
    "bunch_exact_raw_s",
    "clamped",
    "bound_s",
    "bound_approx_s",
    "worst_case_load",
    "bunch_sim_s",
]

ANALYZE_COLUMNS = [
    "schema_version",
    "trace",
    "capacity_bps",
    "t_sleep_s",
    "t_wake_s",
    "sigma_lpi",
    "hysteresis_s",
    "wake_delay_s",
    "lpi_event_count",
    "lpi_events_per_s",
    "mean_lpi_duration_s",
    "time_in_lpi_pct",
]


@dataclass(frozen=True)
class SimJob:
    """One simulation grid point, self-contained and picklable."""

    index: int
    traffic: TrafficSpec
    n_frames: int
    eee: EeeConfig
    link: LinkConfig
    n_reps: int
    base_seed: int
    coal: CoalescerConfig | None = None
    emit_trace: str | None = None


@dataclass(frozen=True)
class SimOutcome:
    """Replication summary for a grid point, plus optional trace metadata."""

    index: int
    summary: ReplicationSummary
    trace_path: str | None = None
    trace_lpi_events: int | None = None
    trace_rho_lpi: float | None = None


def run_sim_job(job: SimJob) -> SimOutcome:
    """Execute one grid point: replications plus the optional trace dump.

    The emitted trace is the departure side of the first replication
    (seed = base_seed); its LPI-event count is warm-up adjusted so it can be
    fed straight to the analyzer.
    """
    summary = replicate(
        job.traffic,
        job.n_frames,
        job.eee,
        job.link,
        job.n_reps,
        job.base_seed,
        coal=job.coal,
    )
    if job.emit_trace is None:
        return SimOutcome(index=job.index, summary=summary)
    stream = realize(job.traffic, job.n_frames, job.base_seed)
    if job.coal is None:
        stats = run_nic_sim(stream, job.eee, job.link)
    else:
        stats = run_tandem_sim(stream, job.coal, job.eee, job.link)
    write_trace(departures(stream, stats), job.emit_trace)
    return SimOutcome(
        index=job.index,
        summary=summary,
        trace_path=job.emit_trace,
        trace_lpi_events=visible_lpi_events(stream, stats, job.eee, job.coal),
        trace_rho_lpi=stats.rho_lpi_measured,
    )


def run_sim_jobs(jobs: Sequence[SimJob], workers: int) -> list[SimOutcome]:
    """Run all grid points, in-process or on a pool, in grid order."""
    if workers <= 1 or len(jobs) <= 1:
        outcomes = [run_sim_job(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_sim_job, jobs))
    return sorted(outcomes, key=lambda o: o.index)


def format_cell(value: object) -> str:
    """Render one CSV cell: '' for missing/NaN, true/false for booleans."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(float(value))  # float() strips numpy scalar wrappers
    return str(value)


def write_rows(stream: IO[str], columns: Sequence[str], rows: Iterable[dict]) -> None:
    """Write header + rows with RFC-4180 quoting and \\n line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(col)) for col in columns])
