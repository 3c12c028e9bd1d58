"""Arrival-process generators and trace file I/O.

All streams are arrays of integer-nanosecond timestamps plus per-frame sizes
in bits.  Random generators use numpy's PCG64 (the `default_rng` bit
generator): seedable, 64-bit, and stream-stable across platforms, so a
(seed, params) pair always reproduces the same stream.

Trace file format (also consumed by the analyzer and the plotting frontend):
one frame per line, `<timestamp_ns> <size_bits>` as decimal ASCII integers
separated by a single space, LF line endings, `#` starts a comment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .types import (
    DomainError,
    ParetoRenewal,
    Periodic,
    Poisson,
    TraceProcess,
    TrafficSpec,
    ns_from_seconds,
)


class TraceParseError(DomainError):
    """A trace file line could not be parsed."""


@dataclass(frozen=True)
class ArrivalStream:
    """Frame arrival (or departure) times in ns with per-frame sizes in bits."""

    timestamps_ns: np.ndarray
    sizes_bits: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.timestamps_ns, dtype=np.int64)
        s = np.asarray(self.sizes_bits, dtype=np.int64)
        object.__setattr__(self, "timestamps_ns", t)
        object.__setattr__(self, "sizes_bits", s)
        if t.shape != s.shape or t.ndim != 1:
            raise DomainError("timestamps and sizes must be 1-d arrays of equal length")
        if t.size:
            if np.any(np.diff(t) < 0):
                raise DomainError("timestamps must be non-decreasing")
            if np.any(s <= 0):
                raise DomainError("frame sizes must be > 0 bits")

    def __len__(self) -> int:
        return int(self.timestamps_ns.size)

    @property
    def duration_s(self) -> float:
        if len(self) < 2:
            return 0.0
        return float(self.timestamps_ns[-1] - self.timestamps_ns[0]) / 1e9

    def total_bits(self) -> int:
        return int(self.sizes_bits.sum())


def _stream_from_gaps(gaps_s: np.ndarray, frame_bits: float) -> ArrivalStream:
    gaps_ns = np.round(gaps_s * 1e9).astype(np.int64)
    # first frame arrives after one full gap so t=0 is a queue-empty instant
    times = np.cumsum(gaps_ns)
    sizes = np.full(times.size, round(frame_bits), dtype=np.int64)
    return ArrivalStream(times, sizes)


def gen_poisson(lam: float, frame_bits: float, n_frames: int, seed: int) -> ArrivalStream:
    """Poisson arrivals: i.i.d. exponential gaps of mean 1/lam."""
    if lam <= 0:
        raise DomainError(f"rate must be > 0, got {lam}")
    if n_frames < 1:
        raise DomainError(f"need at least one frame, got {n_frames}")
    rng = np.random.default_rng(seed)
    gaps = rng.exponential(scale=1.0 / lam, size=n_frames)
    return _stream_from_gaps(gaps, frame_bits)


def gen_pareto(
    alpha: float,
    lam: float,
    frame_bits: float,
    n_frames: int,
    seed: int,
    allow_any_shape: bool = False,
) -> ArrivalStream:
    """Heavy-tailed renewal arrivals: i.i.d. Pareto gaps with mean 1/lam.

    The scale is x_m = (alpha-1)/(alpha*lam), the unique choice that keeps
    the mean gap at 1/lam for a given shape.  Shapes outside (1, 2] are the
    finite-variance regime this generator is not about; they are rejected
    unless allow_any_shape is set (used by the degeneracy checks in tests).
    """
    if lam <= 0:
        raise DomainError(f"rate must be > 0, got {lam}")
    if n_frames < 1:
        raise DomainError(f"need at least one frame, got {n_frames}")
    if not allow_any_shape and not 1.0 < alpha <= 2.0:
        raise DomainError(f"shape must be in (1, 2], got {alpha}")
    if alpha <= 1.0:
        raise DomainError(f"shape must be > 1 for a finite mean, got {alpha}")
    scale = (alpha - 1.0) / (alpha * lam)
    rng = np.random.default_rng(seed)
    # inverse CDF on (0, 1]; 1-random() avoids the zero that would blow up
    u = 1.0 - rng.random(size=n_frames)
    gaps = scale * u ** (-1.0 / alpha)
    return _stream_from_gaps(gaps, frame_bits)


def gen_periodic(period_s: float, frame_bits: float, n_frames: int) -> ArrivalStream:
    """Deterministic arrivals at 0, T, 2T, ..."""
    if period_s <= 0:
        raise DomainError(f"period must be > 0, got {period_s}")
    if n_frames < 1:
        raise DomainError(f"need at least one frame, got {n_frames}")
    period_ns = ns_from_seconds(period_s)
    times = np.arange(n_frames, dtype=np.int64) * period_ns
    sizes = np.full(n_frames, round(frame_bits), dtype=np.int64)
    return ArrivalStream(times, sizes)


def realize(spec: TrafficSpec, n_frames: int, seed: int) -> ArrivalStream:
    """Materialize a traffic spec into a concrete stream."""
    p = spec.process
    if isinstance(p, Poisson):
        return gen_poisson(p.rate, spec.frame_bits, n_frames, seed)
    if isinstance(p, ParetoRenewal):
        return gen_pareto(p.shape, p.rate, spec.frame_bits, n_frames, seed)
    if isinstance(p, Periodic):
        return gen_periodic(p.period, spec.frame_bits, n_frames)
    if isinstance(p, TraceProcess):
        stream = read_trace(p.path)
        if n_frames and len(stream) > n_frames:
            stream = ArrivalStream(
                stream.timestamps_ns[:n_frames], stream.sizes_bits[:n_frames]
            )
        return stream
    raise DomainError(f"unknown process {type(p).__name__}")


def read_trace(path: str | os.PathLike) -> ArrivalStream:
    """Read a trace file; raises TraceParseError with the offending line."""
    times: list[int] = []
    sizes: list[int] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise TraceParseError(
                    f"{path}:{lineno}: expected '<timestamp_ns> <size_bits>', got {raw.rstrip()!r}"
                )
            try:
                t = int(parts[0])
                s = int(parts[1])
            except ValueError:
                raise TraceParseError(
                    f"{path}:{lineno}: non-integer field in {raw.rstrip()!r}"
                ) from None
            if s <= 0:
                raise TraceParseError(f"{path}:{lineno}: size must be > 0, got {s}")
            if times and t < times[-1]:
                raise TraceParseError(
                    f"{path}:{lineno}: timestamp {t} goes backwards (previous {times[-1]})"
                )
            times.append(t)
            sizes.append(s)
    return ArrivalStream(
        np.asarray(times, dtype=np.int64), np.asarray(sizes, dtype=np.int64)
    )


def write_trace(stream: ArrivalStream, path: str | os.PathLike) -> None:
    """Write a stream in the plain-text trace format (lossless round trip)."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for t, s in zip(stream.timestamps_ns.tolist(), stream.sizes_bits.tolist()):
            fh.write(f"{t} {s}\n")
