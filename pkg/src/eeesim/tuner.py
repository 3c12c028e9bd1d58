"""Coalescer sizing: pick a bunch length for a target energy profile.

Two targets are supported.  "match-frame-tx" finds the bunch length whose
pre-coalesced sleeping time equals that of an interface with no hysteresis
at all (the best a standalone interface can do).  "ideal-margin" finds the
bunch length that keeps the sleeping time within delta of the 1 - rho
ceiling, plus its load-independent worst-case bound.

There is also the reverse question: what in-NIC wake delay d achieves the
same consumption as a given pre-coalescer bunch B (answered by bisection).
"""

from __future__ import annotations

import math

from .analytic import precoalesce_sleep_fraction, sleep_fraction_hyst_delay
from .types import (
    CoalescerConfig,
    DomainError,
    EeeConfig,
    LinkConfig,
    Poisson,
    TrafficSpec,
    TuningResult,
)

BISECT_TOL_S = 1e-9  # one simulator time quantum


def bunch_match_frame_tx(
    lam: float, rho: float, eee: EeeConfig, link: LinkConfig
) -> TuningResult:
    """Bunch length that matches the sleeping time of a zero-hysteresis NIC.

    The exact value solves the consumption equality in closed form; the
    approximation B = h*(1 + (1/lam)/(Ts+Tw)) drops the transition-time
    corrections and is good away from the highest rates.  A negative exact
    value means no bunching is needed and clamps to 0.
    """
    _check_load(lam, rho)
    ts, tw = link.t_sleep, link.t_wake
    trans = ts + tw
    if trans <= 0:
        raise DomainError("Ts + Tw must be > 0 to size a bunch against them")
    horizon = eee.hysteresis + trans
    grow = math.exp(lam * ts)
    exact_raw = (
        lam * (horizon + trans * (lam * horizon - 1.0) * grow) - rho
    ) / (lam**2 * trans * grow)
    approx = eee.hysteresis * (1.0 + 1.0 / (lam * trans))
    clamped = exact_raw < 0.0
    return TuningResult(
        bunch_exact=max(exact_raw, 0.0),
        bunch_approx=approx,
        bunch_exact_raw=exact_raw,
        clamped=clamped,
    )


def bunch_for_ideal(
    lam: float, rho: float, eee: EeeConfig, link: LinkConfig, delta: float
) -> float:
    """Bunch length keeping sleeping time at 1 - rho - delta for this load."""
    _check_load(lam, rho)
    _check_delta(delta)
    if rho + delta >= 1.0:
        raise DomainError(f"rho + delta must be < 1, got {rho + delta}")
    horizon = eee.hysteresis + link.t_sleep + link.t_wake
    bunch = (1.0 - rho) * (lam * horizon - rho - delta) / (delta * lam)
    return max(bunch, 0.0)


def worst_case_load(
    eee: EeeConfig, link: LinkConfig, frame_bits: float, delta: float
) -> float:
    """Load at which the ideal-margin bunch length peaks."""
    _check_delta(delta)
    if frame_bits <= 0:
        raise DomainError(f"frame size must be > 0, got {frame_bits}")
    horizon = eee.hysteresis + link.t_sleep + link.t_wake
    spare = horizon * link.capacity - frame_bits
    if spare <= 0:
        raise DomainError(
            "hysteresis plus transition times must exceed one frame time"
        )
    return math.sqrt(delta * frame_bits) / math.sqrt(spare)


def bunch_bound_ideal(
    eee: EeeConfig, link: LinkConfig, frame_bits: float, delta: float
) -> TuningResult:
    """Load-independent bunch length for the ideal-margin target.

    The exact value is the ideal-margin bunch evaluated at the worst-case
    load; the approximation h*/delta neglects the frame and transition
    times.  worst_case_load is filled in on the result.
    """
    _check_delta(delta)
    rho_star = worst_case_load(eee, link, frame_bits, delta)
    horizon = eee.hysteresis + link.t_sleep + link.t_wake
    cap = link.capacity
    exact = (horizon * cap + (delta - 1.0) * frame_bits) / (delta * cap) - (
        2.0
        * math.sqrt(delta * frame_bits)
        * math.sqrt(horizon * cap - frame_bits)
        / (delta * cap)
    )
    approx = eee.hysteresis / delta
    return TuningResult(
        bunch_exact=max(exact, 0.0),
        bunch_approx=approx,
        bunch_exact_raw=exact,
        clamped=exact < 0.0,
        worst_case_load=rho_star,
    )


def equivalent_delay(
    bunch: float,
    traffic: TrafficSpec,
    hysteresis: float,
    link: LinkConfig,
    d_max: float = 1.0,
) -> float | None:
    """Wake delay d giving the same sleeping time as a bunch-B pre-coalescer.

    The in-NIC delay model's sleeping time rises monotonically in d, so the
    match is found by bracketing + bisection down to 1 ns.  Returns 0.0 when
    even d = 0 already sleeps at least as much, and None when no d <= d_max
    reaches the target.
    """
    if not isinstance(traffic.process, Poisson):
        raise DomainError("equivalent_delay is defined for Poisson traffic only")
    if d_max <= 0:
        raise DomainError(f"d_max must be > 0, got {d_max}")
    eee = EeeConfig(hysteresis=hysteresis, wake_delay=0.0)
    target = precoalesce_sleep_fraction(traffic, CoalescerConfig(bunch=bunch), eee, link)
    if not target.valid:
        raise DomainError(f"bunch {bunch} is outside the model's validity: {target.reason}")

    def gap(d: float) -> float:
        got = sleep_fraction_hyst_delay(
            traffic, EeeConfig(hysteresis=hysteresis, wake_delay=d), link
        )
        return got.rho_lpi - target.rho_lpi

    lo, hi = 0.0, d_max
    if gap(lo) >= 0.0:
        return 0.0
    if gap(hi) < 0.0:
        return None
    while hi - lo > BISECT_TOL_S:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def _check_load(lam: float, rho: float) -> None:
    if lam <= 0:
        raise DomainError(f"rate must be > 0, got {lam}")
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must be in [0, 1), got {rho}")


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must be in (0, 1), got {delta}")
