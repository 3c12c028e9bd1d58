"""Closed-form performance models for an EEE interface under Poisson traffic.

The interface alternates between serving frames and a low-power cycle
(hysteresis wait, sleep transition, low-power idle, wake transition).  Every
function here evaluates one piece of that renewal cycle, or composes them
into the long-run fraction of time spent in low-power idle and the resulting
normalized energy draw.

All rates are frames/s, all durations seconds.  Non-Poisson processes are
rejected: the simulator is the only oracle for those.
"""

from __future__ import annotations

import math

from .types import (
    CoalescerConfig,
    DomainError,
    EeeConfig,
    LinkConfig,
    ModelResult,
    Poisson,
    TrafficSpec,
    UnsupportedModelError,
)

# e^x beyond this is meaningless for double precision anyway
_EXP_ARG_CAP = 700.0


def energy_from_sleep(sigma_lpi: float, rho_lpi: float) -> float:
    """Normalized mean power draw given the fraction of time spent asleep."""
    if not 0.0 <= sigma_lpi <= 1.0:
        raise DomainError(f"sigma_lpi must be in [0, 1], got {sigma_lpi}")
    if not 0.0 <= rho_lpi <= 1.0:
        raise DomainError(f"rho_lpi must be in [0, 1], got {rho_lpi}")
    return 1.0 - (1.0 - sigma_lpi) * rho_lpi


def expected_n_poisson(lam: float, h_star: float) -> float:
    """Mean number of busy periods per sleep cycle.

    Each time the queue empties, the interface only sleeps if no frame shows
    up within the hysteresis window; with exponential gaps that succeeds with
    probability e^(-lam*h*), so attempts are geometric with mean e^(lam*h*).
    """
    _check_rate(lam)
    if h_star < 0:
        raise DomainError(f"h_star must be >= 0, got {h_star}")
    x = lam * h_star
    if x > _EXP_ARG_CAP:
        raise DomainError(
            f"lam*h_star = {x:.1f} overflows the geometric mean (cap {_EXP_ARG_CAP:g})"
        )
    return math.exp(x)


def expected_h_poisson(lam: float, h_star: float) -> float:
    """Mean time actually spent in a hysteresis window.

    The window ends at the first arrival or after h*, whichever comes first,
    so this is E[min(Exp(lam), h*)] = (1 - e^(-lam*h*)) / lam.
    """
    _check_rate(lam)
    if h_star < 0:
        raise DomainError(f"h_star must be >= 0, got {h_star}")
    return -math.expm1(-lam * h_star) / lam


def expected_tlpi_poisson(lam: float, wake_delay: float, t_sleep: float) -> float:
    """Mean time per cycle spent in low-power idle.

    The wake transition starts at max(end of sleep transition, first arrival
    + wake_delay), measuring the first arrival from the start of the sleep
    transition.  Integrating over the exponential arrival gives
    1/lam + d - Ts for d > Ts and e^(-lam*(Ts-d))/lam otherwise; the two
    branches agree at d = Ts.
    """
    _check_rate(lam)
    if wake_delay < 0 or t_sleep < 0:
        raise DomainError("wake_delay and t_sleep must be >= 0")
    if wake_delay > t_sleep:
        return 1.0 / lam + wake_delay - t_sleep
    return math.exp(-lam * (t_sleep - wake_delay)) / lam


def _poisson_rate(traffic: TrafficSpec) -> float:
    if not isinstance(traffic.process, Poisson):
        raise UnsupportedModelError(
            f"closed forms cover Poisson arrivals only, got {type(traffic.process).__name__}"
        )
    return traffic.process.rate


def sleep_fraction_hyst_delay(
    traffic: TrafficSpec, eee: EeeConfig, link: LinkConfig
) -> ModelResult:
    """Long-run low-power-idle fraction for a hysteresis + wake-delay policy.

    rho_lpi = (1-rho) * E[T_LPI] / (E[T_LPI] + E[n]E[h] + Ts + Tw).
    """
    lam = _poisson_rate(traffic)
    rho = traffic.load(link)
    exp_h = expected_h_poisson(lam, eee.hysteresis)
    exp_tlpi = expected_tlpi_poisson(lam, eee.wake_delay, link.t_sleep)
    if lam * eee.hysteresis > _EXP_ARG_CAP:
        # e^(lam*h*) overflows a double; the hysteresis practically never
        # expires and the sleeping fraction underflows to an exact 0.
        return ModelResult(
            rho_lpi=0.0,
            sigma=energy_from_sleep(link.sigma_lpi, 0.0),
            exp_tlpi=exp_tlpi,
            exp_n=math.inf,
            exp_h=exp_h,
            exp_cycle=math.inf,
        )
    exp_n = expected_n_poisson(lam, eee.hysteresis)
    off_time = exp_tlpi + exp_n * exp_h + link.t_sleep + link.t_wake
    rho_lpi = (1.0 - rho) * exp_tlpi / off_time
    # per-cycle off time scales to the full cycle through the busy fraction
    exp_cycle = off_time / (1.0 - rho)
    return ModelResult(
        rho_lpi=rho_lpi,
        sigma=energy_from_sleep(link.sigma_lpi, rho_lpi),
        exp_tlpi=exp_tlpi,
        exp_n=exp_n,
        exp_h=exp_h,
        exp_cycle=exp_cycle,
    )


def sleep_fraction_frame_tx(traffic: TrafficSpec, link: LinkConfig) -> float:
    """Low-power-idle fraction when the interface sleeps on every empty queue.

    Equivalent to sleep_fraction_hyst_delay with zero hysteresis and zero
    wake delay: (1-rho) * e^(-lam*Ts) / (e^(-lam*Ts) + lam*(Ts+Tw)).
    """
    lam = _poisson_rate(traffic)
    rho = traffic.load(link)
    decay = math.exp(-lam * link.t_sleep)
    return (1.0 - rho) * decay / (decay + lam * (link.t_sleep + link.t_wake))


def precoalesce_sleep_fraction(
    traffic: TrafficSpec,
    coal: CoalescerConfig,
    eee: EeeConfig,
    link: LinkConfig,
) -> ModelResult:
    """Low-power-idle fraction with a coalescer ahead of the interface.

    While the interface stays synchronized to the coalescer's bunches,
    rho_lpi = (1-rho) * (1/lam + B - h* - Ts - Tw) / ((1-rho)/lam + B).
    The model needs the idle gap plus bunch window to outlast the wake and
    hysteresis (1/lam + B > Tw + h*) and the wake delay to fit inside the
    bunch (d < B); out-of-validity points come back flagged, not raised.
    """
    lam = _poisson_rate(traffic)
    rho = traffic.load(link)
    bunch = coal.bunch
    reasons = []
    if 1.0 / lam + bunch <= link.t_wake + eee.hysteresis:
        reasons.append("idle gap too short: interface desynchronizes from the coalescer")
    if eee.wake_delay >= bunch:
        reasons.append("wake delay must be smaller than the bunch window")
    if reasons:
        return ModelResult(
            rho_lpi=math.nan,
            sigma=math.nan,
            valid=False,
            reason="; ".join(reasons),
        )
    idle = 1.0 / lam + bunch - eee.hysteresis - link.t_sleep - link.t_wake
    cycle_off = (1.0 - rho) / lam + bunch
    rho_lpi = (1.0 - rho) * idle / cycle_off
    if rho_lpi < 0.0:
        return ModelResult(
            rho_lpi=math.nan,
            sigma=math.nan,
            valid=False,
            reason="bunch window shorter than the transition overhead",
        )
    return ModelResult(
        rho_lpi=rho_lpi,
        sigma=energy_from_sleep(link.sigma_lpi, rho_lpi),
        exp_tlpi=idle,
        exp_cycle=cycle_off / (1.0 - rho),
    )


def marshall_wait_general(
    lam: float,
    rho: float,
    var_service: float,
    var_interarrival: float,
    bunch: float,
    t_wake: float,
    exp_gap: float,
    exp_gap_sq: float,
) -> float:
    """Mean frame wait for a coalescing queue, general renewal input.

    Kingman/Marshall-style waiting time with an exceptional first service:
    the first frame of each bunch carries the full bunch window plus the wake
    transition.  exp_gap/exp_gap_sq are the first two moments of the idle
    gap that ends a bunch cycle.
    """
    _check_rate(lam)
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must be in [0, 1), got {rho}")
    for name, v in (
        ("var_service", var_service),
        ("var_interarrival", var_interarrival),
        ("exp_gap", exp_gap),
        ("exp_gap_sq", exp_gap_sq),
    ):
        if not math.isfinite(v):
            raise UnsupportedModelError(f"{name} must be finite, got {v}")
        if v < 0:
            raise DomainError(f"{name} must be >= 0, got {v}")
    if bunch < 0 or t_wake < 0:
        raise DomainError("bunch and t_wake must be >= 0")
    first = lam * (var_service + var_interarrival) / (2.0 * (1.0 - rho))
    second = (1.0 - rho) / (2.0 * lam)
    setup = bunch + t_wake
    third = (setup**2 - exp_gap_sq) / (2.0 * (setup + exp_gap))
    return first + second + third


def precoalesce_mean_wait(
    lam: float, rho: float, var_service: float, bunch: float, t_wake: float
) -> float:
    """Mean frame wait for the coalescing queue under Poisson arrivals.

    Specializes marshall_wait_general with exponential gap moments
    (E[e] = 1/lam, E[e^2] = 2/lam^2, var_I = 1/lam^2).
    """
    _check_rate(lam)
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must be in [0, 1), got {rho}")
    if var_service < 0:
        raise DomainError(f"var_service must be >= 0, got {var_service}")
    if bunch < 0 or t_wake < 0:
        raise DomainError("bunch and t_wake must be >= 0")
    setup = bunch + t_wake
    first = (1.0 + lam**2 * var_service) / (2.0 * lam * (1.0 - rho))
    second = (1.0 - rho) / (2.0 * lam)
    third = (lam**2 * setup**2 - 2.0) / (2.0 * lam * (1.0 + lam * setup))
    return first + second + third


def _check_rate(lam: float) -> None:
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"arrival rate must be positive and finite, got {lam}")
