"""Energy Efficient Ethernet sleep-time modeling and simulation toolkit.

The package answers one question from several angles: how much of the time
can an EEE (IEEE 802.3az) interface spend in its low-power idle state under
a given traffic mix and configuration, and what does that cost in delay?

* `analytic` — closed-form sleeping-time and waiting-time models.
* `simulator` — exact discrete-event simulation of the interface, with an
  optional upstream frame coalescer, plus replication helpers.
* `traffic` — Poisson / Pareto / periodic generators and trace file I/O.
* `tuner` — bunch lengths that hit a target energy consumption.
* `analyzer` — LPI statistics recovered from departure-side traces.
* `cli` — the `eeesim` command tying it all together with CSV output.
"""

from .analytic import (
    energy_from_sleep,
    expected_h_poisson,
    expected_n_poisson,
    expected_tlpi_poisson,
    marshall_wait_general,
    precoalesce_mean_wait,
    precoalesce_sleep_fraction,
    sleep_fraction_frame_tx,
    sleep_fraction_hyst_delay,
)
from .analyzer import LpiEstimate, estimate_lpi
from .simulator import (
    coalesce_stream,
    departures,
    metrics,
    replicate,
    run_nic_sim,
    run_tandem_sim,
    simulate_once,
    visible_lpi_events,
)
from .traffic import (
    ArrivalStream,
    TraceParseError,
    gen_pareto,
    gen_periodic,
    gen_poisson,
    read_trace,
    realize,
    write_trace,
)
from .tuner import (
    bunch_bound_ideal,
    bunch_for_ideal,
    bunch_match_frame_tx,
    equivalent_delay,
    worst_case_load,
)
from .types import (
    PRESETS,
    CoalescerConfig,
    CoalescerStats,
    DomainError,
    EeeConfig,
    LinkConfig,
    ModelResult,
    ParetoRenewal,
    Periodic,
    Poisson,
    ReplicationSummary,
    SimStats,
    TraceProcess,
    TrafficSpec,
    TuningResult,
    TuningTarget,
    UnsupportedModelError,
    lambda_from_load,
    load_from_lambda,
    pareto_traffic,
    parse_time,
    poisson_traffic,
)

__version__ = "0.1.0"

__all__ = [
    "ArrivalStream",
    "CoalescerConfig",
    "CoalescerStats",
    "DomainError",
    "EeeConfig",
    "LinkConfig",
    "LpiEstimate",
    "ModelResult",
    "PRESETS",
    "ParetoRenewal",
    "Periodic",
    "Poisson",
    "ReplicationSummary",
    "SimStats",
    "TraceParseError",
    "TraceProcess",
    "TrafficSpec",
    "TuningResult",
    "TuningTarget",
    "UnsupportedModelError",
    "bunch_bound_ideal",
    "bunch_for_ideal",
    "bunch_match_frame_tx",
    "coalesce_stream",
    "departures",
    "energy_from_sleep",
    "equivalent_delay",
    "estimate_lpi",
    "expected_h_poisson",
    "expected_n_poisson",
    "expected_tlpi_poisson",
    "gen_pareto",
    "gen_periodic",
    "gen_poisson",
    "lambda_from_load",
    "load_from_lambda",
    "marshall_wait_general",
    "metrics",
    "pareto_traffic",
    "parse_time",
    "poisson_traffic",
    "precoalesce_mean_wait",
    "precoalesce_sleep_fraction",
    "read_trace",
    "realize",
    "replicate",
    "run_nic_sim",
    "run_tandem_sim",
    "simulate_once",
    "sleep_fraction_frame_tx",
    "sleep_fraction_hyst_delay",
    "visible_lpi_events",
    "worst_case_load",
    "write_trace",
    "__version__",
]
