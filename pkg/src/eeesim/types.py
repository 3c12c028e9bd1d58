"""Core configuration types and unit helpers.

Conventions used across the package:

* analytic code works in float seconds, bits and bits/second
* the simulator works on integer nanoseconds (exact event ordering)
* loads are fractions of link capacity measured on frame payload bits
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

NS_PER_S = 1_000_000_000


class DomainError(ValueError):
    """A parameter is outside the domain an operation is defined on."""


class UnsupportedModelError(DomainError):
    """A closed-form model was asked about traffic it does not cover."""


def ns_from_seconds(t: float) -> int:
    """Convert seconds to integer nanoseconds (round to nearest)."""
    if not math.isfinite(t):
        raise DomainError(f"cannot convert {t!r} to nanoseconds")
    return round(t * NS_PER_S)


def seconds_from_ns(t_ns: int | float) -> float:
    return t_ns / NS_PER_S


def parse_time(text: str) -> float:
    """Parse a duration with an optional ns/us/ms/s suffix into seconds.

    Bare numbers are seconds. "20us", "2.88 us", "1ms", "450ns" all work.
    """
    s = text.strip().lower().replace("µ", "u")
    divisor = 1.0
    for suffix, factor in (("ns", 1e9), ("us", 1e6), ("ms", 1e3), ("s", 1.0)):
        if s.endswith(suffix):
            s = s[: -len(suffix)]
            divisor = factor
            break
    try:
        value = float(s)
    except ValueError:
        raise DomainError(f"cannot parse duration {text!r}") from None
    if value < 0:
        raise DomainError(f"duration must be >= 0, got {text!r}")
    # Divide rather than multiply by 1e-6 etc.: 200/1e6 == 2e-4 exactly.
    return value / divisor


def lambda_from_load(rho: float, link: LinkConfig, frame_bits: float) -> float:
    """Frame arrival rate (frames/s) that produces load rho on the link."""
    if not 0.0 < rho <= 1.0:
        raise DomainError(f"load must be in (0, 1], got {rho}")
    if frame_bits <= 0:
        raise DomainError(f"frame size must be positive, got {frame_bits}")
    return rho * link.capacity / frame_bits


def load_from_lambda(lam: float, link: LinkConfig, frame_bits: float) -> float:
    """Load fraction produced by lam frames/s of frame_bits-bit frames."""
    if lam < 0:
        raise DomainError(f"arrival rate must be >= 0, got {lam}")
    if frame_bits <= 0:
        raise DomainError(f"frame size must be positive, got {frame_bits}")
    return lam * frame_bits / link.capacity


@dataclass(frozen=True)
class LinkConfig:
    """Physical link and power figures.

    capacity: line rate in bits/s.
    t_sleep: active -> low-power transition time, seconds.
    t_wake: low-power -> active transition time, seconds.
    sigma_lpi: power drawn in low-power idle as a fraction of active power.
    """

    capacity: float = 10e9
    t_sleep: float = 2.88e-6
    t_wake: float = 4.48e-6
    sigma_lpi: float = 0.1

    def __post_init__(self) -> None:
        if self.capacity <= 0:
            raise DomainError(f"capacity must be > 0, got {self.capacity}")
        if self.t_sleep < 0 or self.t_wake < 0:
            raise DomainError("transition times must be >= 0")
        if not 0.0 <= self.sigma_lpi < 1.0:
            raise DomainError(
                f"sigma_lpi must be in [0, 1), got {self.sigma_lpi}"
            )

    def service_time(self, frame_bits: float) -> float:
        return frame_bits / self.capacity


@dataclass(frozen=True)
class EeeConfig:
    """Interface sleep policy: hysteresis before sleeping, delay before waking.

    hysteresis: time the queue must stay empty before the sleep transition
        starts, seconds.
    wake_delay: extra time the interface stays in low-power idle after the
        first frame arrives (frame coalescing in the NIC), seconds.
    """

    hysteresis: float = 0.0
    wake_delay: float = 0.0

    def __post_init__(self) -> None:
        if self.hysteresis < 0:
            raise DomainError(f"hysteresis must be >= 0, got {self.hysteresis}")
        if self.wake_delay < 0:
            raise DomainError(f"wake_delay must be >= 0, got {self.wake_delay}")


# Vendor-style operating points used throughout: an aggressive sleeper with a
# short hysteresis, and a conservative one that needs long idle gaps.
PRESETS: dict[str, EeeConfig] = {
    "aggressive": EeeConfig(hysteresis=20e-6, wake_delay=6e-6),
    "non-aggressive": EeeConfig(hysteresis=600e-6, wake_delay=6e-6),
}


@dataclass(frozen=True)
class CoalescerConfig:
    """Standalone coalescer placed in front of the interface.

    bunch: time the first queued frame waits before the drain starts, seconds.
    propagation: one-way delay between coalescer output and interface input.
    """

    bunch: float
    propagation: float = 0.0

    def __post_init__(self) -> None:
        if self.bunch < 0:
            raise DomainError(f"bunch must be >= 0, got {self.bunch}")
        if self.propagation < 0:
            raise DomainError(f"propagation must be >= 0, got {self.propagation}")


@dataclass(frozen=True)
class Poisson:
    """Poisson frame arrivals at `rate` frames/s."""

    rate: float

    def __post_init__(self) -> None:
        if self.rate <= 0:
            raise DomainError(f"rate must be > 0, got {self.rate}")


@dataclass(frozen=True)
class ParetoRenewal:
    """Renewal arrivals with Pareto inter-arrival times.

    The scale is chosen so the mean inter-arrival equals 1/rate, i.e. the
    stream is load-matched with a Poisson stream of the same rate.
    """

    rate: float
    shape: float = 1.8

    def __post_init__(self) -> None:
        if self.rate <= 0:
            raise DomainError(f"rate must be > 0, got {self.rate}")
        if not 1.0 < self.shape <= 2.0:
            raise DomainError(
                f"shape must be in (1, 2] for a finite-mean heavy tail, got {self.shape}"
            )

    @property
    def scale(self) -> float:
        """Minimum inter-arrival time (Pareto location parameter)."""
        return (self.shape - 1.0) / (self.shape * self.rate)


@dataclass(frozen=True)
class Periodic:
    """Deterministic arrivals every `period` seconds."""

    period: float

    def __post_init__(self) -> None:
        if self.period <= 0:
            raise DomainError(f"period must be > 0, got {self.period}")

    @property
    def rate(self) -> float:
        return 1.0 / self.period


@dataclass(frozen=True)
class TraceProcess:
    """Arrivals replayed from a trace file."""

    path: str


Process = Poisson | ParetoRenewal | Periodic | TraceProcess


@dataclass(frozen=True)
class TrafficSpec:
    """What the link carries: a frame size and an arrival process."""

    process: Process
    frame_bits: float = 12000.0

    def __post_init__(self) -> None:
        if self.frame_bits <= 0:
            raise DomainError(f"frame_bits must be > 0, got {self.frame_bits}")

    @property
    def rate(self) -> float:
        """Mean arrival rate in frames/s (undefined for traces)."""
        if isinstance(self.process, TraceProcess):
            raise DomainError("trace traffic has no declared rate")
        return self.process.rate

    def load(self, link: LinkConfig) -> float:
        rho = load_from_lambda(self.rate, link, self.frame_bits)
        if rho >= 1.0:
            raise DomainError(f"offered load {rho:.4f} is not < 1")
        return rho


def poisson_traffic(
    rho: float, link: LinkConfig, frame_bits: float = 12000.0
) -> TrafficSpec:
    """Poisson traffic producing load rho on the given link."""
    lam = lambda_from_load(rho, link, frame_bits)
    return TrafficSpec(process=Poisson(rate=lam), frame_bits=frame_bits)


def pareto_traffic(
    rho: float, link: LinkConfig, frame_bits: float = 12000.0, shape: float = 1.8
) -> TrafficSpec:
    """Heavy-tailed traffic load-matched to `rho` on the given link."""
    lam = lambda_from_load(rho, link, frame_bits)
    return TrafficSpec(process=ParetoRenewal(rate=lam, shape=shape), frame_bits=frame_bits)


@dataclass(frozen=True)
class CoalescerStats:
    """Coalescer-side accounting for a tandem run (all times seconds)."""

    bunches: int
    time_empty: float
    time_accumulating: float
    time_draining: float
    total_time: float


@dataclass(frozen=True)
class SimStats:
    """Measured outcome of one simulation run.

    Times are seconds (converted from exact integer-ns accounting; the state
    times sum to total_time to the nanosecond).  frame_delays holds every
    per-frame wait from arrival to start of transmission, in seconds; for a
    tandem run the wait is measured from arrival at the coalescer to start
    of NIC transmission and `coalescer` carries the coalescer-side times.

    lpi_cycles counts every entry into low-power idle, including the warm-up
    cycle and zero-length visits (sleep transition immediately followed by a
    wake).  failed_hysteresis_count counts hysteresis windows aborted by an
    arrival, excluding the warm-up cycle (everything before the first LPI
    exit).
    """

    total_time: float
    time_active: float
    time_hysteresis: float
    time_sleep_trans: float
    time_lpi: float
    time_wake_trans: float
    lpi_cycles: int
    failed_hysteresis_count: int
    frames_served: int
    frame_delays: np.ndarray  # float64 seconds, one entry per frame
    rho_lpi_measured: float
    sigma_measured: float
    coalescer: CoalescerStats | None = None


@dataclass(frozen=True)
class ModelResult:
    """Closed-form prediction for one operating point.

    All durations in seconds. exp_cycle is None when the model variant does
    not predict a cycle length.
    """

    rho_lpi: float
    sigma: float
    exp_tlpi: float | None = None
    exp_n: float | None = None
    exp_h: float | None = None
    exp_cycle: float | None = None
    valid: bool = True
    reason: str | None = None


@dataclass(frozen=True)
class TuningTarget:
    """What a bunch-length search should aim for.

    kind "match-frame-tx": spend as little time awake as an interface that
    sleeps whenever its queue is empty.
    kind "ideal-margin": stay within `delta` of the unreachable 1 - rho
    sleeping-time ceiling.
    """

    kind: str
    delta: float = 0.1

    def __post_init__(self) -> None:
        if self.kind not in ("match-frame-tx", "ideal-margin"):
            raise DomainError(f"unknown tuning target {self.kind!r}")
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must be in (0, 1), got {self.delta}")


@dataclass(frozen=True)
class TuningResult:
    """Outcome of a bunch-length computation.

    bunch_exact is clamped at 0; bunch_exact_raw keeps the unclamped value so
    callers can see how far negative the closed form went.
    """

    bunch_exact: float
    bunch_approx: float
    bunch_exact_raw: float
    clamped: bool = False
    worst_case_load: float | None = None


@dataclass(frozen=True)
class ReplicationSummary:
    """Mean and 95% Student-t confidence half-width per metric."""

    n_reps: int
    seeds: tuple[int, ...]
    mean: dict[str, float] = field(default_factory=dict)
    ci95_halfwidth: dict[str, float] = field(default_factory=dict)
