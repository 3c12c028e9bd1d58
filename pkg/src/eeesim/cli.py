"""Command-line interface: model curves, simulation sweeps, tuning, traces.

Subcommands
    model     evaluate an analytic model over a parameter grid -> CSV
    sim       run replicated simulations over a parameter grid -> CSV
    tune      compute bunch lengths for a consumption target -> report/CSV
    coalesce  transform a trace through the bunching shaper -> trace
    analyze   estimate LPI statistics from a departure trace -> CSV

Values come from four layers with increasing precedence: built-in defaults,
a named preset (--preset or the `preset` config key), the --config file
section matching the subcommand (INI syntax, keys named like the long flags
with underscores), and finally explicit command-line flags.

Duration flags accept ns/us/ms/s suffixes; bare numbers are seconds.  The
flags --hysteresis, --delay, --bunch and --rho accept comma-separated lists
where a grid makes sense (model, sim); grid rows are emitted with the load
varying fastest and the leftmost listed dimension slowest.  Exit codes:
0 success, 2 usage error, 3 domain or validity error.
"""

from __future__ import annotations

import argparse
import configparser
import itertools
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import sweep
from .analytic import (
    energy_from_sleep,
    precoalesce_mean_wait,
    precoalesce_sleep_fraction,
    sleep_fraction_frame_tx,
    sleep_fraction_hyst_delay,
)
from .analyzer import estimate_lpi
from .simulator import coalesce_stream, simulate_once
from .traffic import read_trace, write_trace
from .tuner import bunch_bound_ideal, bunch_for_ideal, bunch_match_frame_tx
from .types import (
    PRESETS,
    CoalescerConfig,
    DomainError,
    EeeConfig,
    LinkConfig,
    Periodic,
    TraceProcess,
    TrafficSpec,
    UnsupportedModelError,
    lambda_from_load,
    pareto_traffic,
    parse_time,
    poisson_traffic,
)

MODEL_KINDS = ("hyst-delay", "frame-tx", "precoalesce", "wait")
TUNE_TARGETS = ("frame-tx", "ideal")
TRAFFIC_KINDS = ("poisson", "pareto", "periodic", "trace")


class UsageError(Exception):
    """Malformed invocation (bad flag value, missing argument, bad grid)."""


# ---------------------------------------------------------------------------
# value converters (shared by flags and config-file keys)


def _conv_time(text: str) -> float:
    try:
        return parse_time(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _conv_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _conv_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def _conv_str(text: str) -> str:
    return text


def _conv_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _list_of(conv: Callable[[str], object]) -> Callable[[str], tuple]:
    def convert(text: str) -> tuple:
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(p == "" for p in parts):
            raise UsageError(f"malformed list: {text!r}")
        return tuple(conv(p) for p in parts)

    return convert


def _choice_of(options: Sequence[str]) -> Callable[[str], str]:
    def convert(text: str) -> str:
        if text not in options:
            raise UsageError(
                f"expected one of {', '.join(options)}; got {text!r}"
            )
        return text

    return convert


_conv_time_list = _list_of(_conv_time)
_conv_float_list = _list_of(_conv_float)


# ---------------------------------------------------------------------------
# flag table


@dataclass(frozen=True)
class Flag:
    dest: str
    names: tuple[str, ...]  # () marks a positional with nargs='?'
    conv: Callable[[str], object]
    default: object
    help: str
    commands: tuple[str, ...]
    switch: bool = False


GRID_CMDS = ("model", "sim")

FLAGS: tuple[Flag, ...] = (
    Flag("kind", (), _choice_of(MODEL_KINDS), None,
         "analytic model to evaluate", ("model",)),
    Flag("target", (), _choice_of(TUNE_TARGETS), None,
         "consumption target to tune for", ("tune",)),
    Flag("input", (), _conv_str, None, "input trace file", ("coalesce",)),
    Flag("trace_in", (), _conv_str, None,
         "departure trace to analyze", ("analyze",)),
    # link ------------------------------------------------------------------
    Flag("capacity", ("--capacity",), _conv_float, 10e9,
         "link capacity in bit/s", ("model", "sim", "tune", "coalesce", "analyze")),
    Flag("t_sleep", ("--t-sleep",), _conv_time, 2.88e-6,
         "sleep transition time", ("model", "sim", "tune", "analyze")),
    Flag("t_wake", ("--t-wake",), _conv_time, 4.48e-6,
         "wake transition time", ("model", "sim", "tune", "analyze")),
    Flag("sigma_lpi", ("--sigma-lpi",), _conv_float, 0.1,
         "relative power draw while sleeping", ("model", "sim", "tune", "analyze")),
    Flag("frame_bits", ("--frame-bits",), _conv_float, 12000.0,
         "frame size in bits", ("model", "sim", "tune")),
    # interface policy -------------------------------------------------------
    Flag("preset", ("--preset",), _choice_of(tuple(PRESETS)), None,
         "named hysteresis/delay pair", ("model", "sim", "tune", "analyze")),
    Flag("hysteresis", ("--hysteresis", "--h"), _conv_time_list, (0.0,),
         "hysteresis before sleeping (comma list sweeps it)", GRID_CMDS),
    Flag("hysteresis", ("--hysteresis", "--h"), _conv_time, 0.0,
         "hysteresis before sleeping", ("tune", "analyze")),
    Flag("delay", ("--delay", "--d"), _conv_time_list, (0.0,),
         "wake delay after the first arrival (comma list sweeps it)", GRID_CMDS),
    Flag("delay", ("--delay", "--d"), _conv_time, 0.0,
         "wake delay after the first arrival", ("tune", "analyze")),
    # coalescer ---------------------------------------------------------------
    Flag("bunch", ("--bunch", "--b"), _conv_time_list, None,
         "bunch length of the pre-coalescer (comma list sweeps it)", GRID_CMDS),
    Flag("bunch", ("--bunch", "--b"), _conv_time, 0.0,
         "bunch length of the pre-coalescer", ("coalesce",)),
    Flag("propagation", ("--propagation",), _conv_time, 0.0,
         "delay between coalescer and interface", ("sim", "coalesce")),
    # traffic -----------------------------------------------------------------
    Flag("traffic", ("--traffic",), _choice_of(TRAFFIC_KINDS), "poisson",
         "arrival process", ("sim",)),
    Flag("shape", ("--shape",), _conv_float, 1.8,
         "Pareto tail exponent", ("sim",)),
    Flag("period", ("--period",), _conv_time, None,
         "inter-arrival period for periodic traffic", ("sim",)),
    Flag("trace", ("--trace",), _conv_str, None,
         "arrival trace file for trace traffic", ("sim",)),
    Flag("rho", ("--rho",), _conv_float_list, None,
         "offered load(s) as a fraction of capacity", ("model", "sim", "tune")),
    # execution ---------------------------------------------------------------
    Flag("frames", ("--frames",), _conv_int, 150_000,
         "frames per replication", ("sim", "tune")),
    Flag("reps", ("--reps",), _conv_int, 6,
         "replications per grid point", ("sim",)),
    Flag("seed", ("--seed",), _conv_int, 1,
         "base random seed", ("sim", "tune")),
    Flag("jobs", ("--jobs",), _conv_int, 1,
         "worker processes for the sweep", ("sim",)),
    Flag("emit_trace", ("--emit-trace",), _conv_str, None,
         "write each point's departure trace (multi-point grids get -NNN suffixes)",
         ("sim",)),
    # tuning ------------------------------------------------------------------
    Flag("delta", ("--delta",), _conv_float, 0.1,
         "allowed distance from the ideal sleeping time", ("tune",)),
    Flag("sim_search", ("--sim-search",), _conv_bool, False,
         "also search the simulator for the smallest sufficient bunch",
         ("tune",), switch=True),
    Flag("format", ("--format",), _choice_of(("report", "csv")), "report",
         "output style", ("tune",)),
    # analysis ----------------------------------------------------------------
    Flag("count", ("--count",), _conv_int, None,
         "number of LPI events behind the trace", ("analyze",)),
    # i/o ---------------------------------------------------------------------
    Flag("out", ("--out",), _conv_str, None,
         "output file (default: stdout)", ("model", "sim", "tune", "coalesce", "analyze")),
    Flag("config", ("--config",), _conv_str, None,
         "INI file with a section per subcommand", ("model", "sim", "tune", "coalesce", "analyze")),
)


def _flags_for(command: str) -> list[Flag]:
    return [f for f in FLAGS if command in f.commands]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eeesim",
        description="Energy Efficient Ethernet sleep-time models and simulator",
        allow_abbrev=False,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "model": "evaluate an analytic model over a grid (CSV)",
        "sim": "run replicated simulations over a grid (CSV)",
        "tune": "compute bunch lengths for a consumption target",
        "coalesce": "pass a trace through the bunching shaper",
        "analyze": "estimate LPI statistics from a departure trace",
    }
    for command, text in helps.items():
        sub = subparsers.add_parser(command, help=text, allow_abbrev=False)
        for flag in _flags_for(command):
            if not flag.names:
                sub.add_argument(flag.dest, nargs="?", default=None, help=flag.help,
                                 metavar=flag.dest.replace("_", "-"))
            elif flag.switch:
                sub.add_argument(*flag.names, dest=flag.dest, action="store_const",
                                 const="true", default=None, help=flag.help)
            else:
                sub.add_argument(*flag.names, dest=flag.dest, metavar="V",
                                 default=None, help=flag.help)
    return parser


# ---------------------------------------------------------------------------
# layering: defaults < preset < config file < explicit flags


def _read_config_section(path: str, command: str) -> dict[str, str]:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    except configparser.Error as exc:
        raise UsageError(f"bad config {path!r}: {exc}") from None
    if not parser.has_section(command):
        return {}
    return dict(parser.items(command))


def merge_params(command: str, args: argparse.Namespace) -> dict:
    """Resolve the four configuration layers into one parameter dict."""
    flags = {f.dest: f for f in _flags_for(command)}
    params = {dest: flag.default for dest, flag in flags.items()}

    config_path = getattr(args, "config", None)
    section = _read_config_section(config_path, command) if config_path else {}

    preset_name = getattr(args, "preset", None) or section.get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise UsageError(
                f"unknown preset {preset_name!r}; choose from {', '.join(PRESETS)}"
            )
        preset = PRESETS[preset_name]
        if "hysteresis" in flags:
            scalar = flags["hysteresis"].conv is _conv_time
            params["hysteresis"] = preset.hysteresis if scalar else (preset.hysteresis,)
            params["delay"] = preset.wake_delay if scalar else (preset.wake_delay,)
        params["preset"] = preset_name

    for key, raw in section.items():
        dest = key.replace("-", "_")
        if dest == "preset":
            continue
        if dest not in flags:
            raise UsageError(f"unknown key {key!r} in config section [{command}]")
        params[dest] = flags[dest].conv(raw)

    for dest, flag in flags.items():
        raw = getattr(args, dest, None)
        if raw is not None and dest != "preset":
            params[dest] = flag.conv(raw)
    return params


def _require(params: dict, key: str, why: str) -> object:
    value = params.get(key)
    if value is None:
        raise UsageError(f"missing --{key.replace('_', '-')}: {why}")
    return value


def _build_link(p: dict) -> LinkConfig:
    return LinkConfig(
        capacity=p["capacity"],
        t_sleep=p["t_sleep"],
        t_wake=p["t_wake"],
        sigma_lpi=p["sigma_lpi"],
    )


def _open_out(p: dict):
    if p.get("out"):
        return open(p["out"], "w", encoding="utf-8", newline="")
    return None


def _emit(p: dict, columns: Sequence[str], rows: list[dict]) -> None:
    out = _open_out(p)
    if out is None:
        sweep.write_rows(sys.stdout, columns, rows)
    else:
        with out:
            sweep.write_rows(out, columns, rows)


def _link_cells(p: dict, link: LinkConfig) -> dict:
    return {
        "schema_version": sweep.SCHEMA_VERSION,
        "frame_bits": p.get("frame_bits"),
        "capacity_bps": link.capacity,
        "t_sleep_s": link.t_sleep,
        "t_wake_s": link.t_wake,
        "sigma_lpi": link.sigma_lpi,
    }


# ---------------------------------------------------------------------------
# model


def _model_row(kind: str, p: dict, link: LinkConfig, point: dict) -> dict:
    rho = point["rho"]
    lam = lambda_from_load(rho, link, p["frame_bits"])
    traffic = poisson_traffic(rho, link, p["frame_bits"])
    row = _link_cells(p, link)
    row.update(
        {
            "model": kind,
            "rho": rho,
            "rate_fps": lam,
            "hysteresis_s": point.get("hysteresis"),
            "wake_delay_s": point.get("delay"),
            "bunch_s": point.get("bunch"),
            "valid": True,
        }
    )
    try:
        if kind == "hyst-delay":
            eee = EeeConfig(hysteresis=point["hysteresis"], wake_delay=point["delay"])
            res = sleep_fraction_hyst_delay(traffic, eee, link)
        elif kind == "frame-tx":
            rho_lpi = sleep_fraction_frame_tx(traffic, link)
            row.update(rho_lpi=rho_lpi, sigma=energy_from_sleep(link.sigma_lpi, rho_lpi))
            return row
        elif kind == "precoalesce":
            eee = EeeConfig(hysteresis=point["hysteresis"], wake_delay=point["delay"])
            coal = CoalescerConfig(bunch=point["bunch"])
            res = precoalesce_sleep_fraction(traffic, coal, eee, link)
        else:  # wait
            wait = precoalesce_mean_wait(lam, rho, 0.0, point["bunch"], link.t_wake)
            row.update(mean_wait_s=wait)
            return row
    except UnsupportedModelError as exc:
        row.update(valid=False, reason=str(exc))
        return row
    row.update(
        rho_lpi=res.rho_lpi,
        sigma=res.sigma,
        exp_tlpi_s=res.exp_tlpi,
        exp_n=res.exp_n,
        exp_h_s=res.exp_h,
        exp_cycle_s=res.exp_cycle,
        valid=res.valid,
        reason=res.reason,
    )
    return row


_MODEL_DIMS = {
    "hyst-delay": ("hysteresis", "delay", "rho"),
    "frame-tx": ("rho",),
    "precoalesce": ("hysteresis", "delay", "bunch", "rho"),
    "wait": ("bunch", "rho"),
}


def cmd_model(p: dict) -> int:
    kind = _require(p, "kind", "which analytic model to evaluate")
    link = _build_link(p)
    dims = _MODEL_DIMS[kind]
    axes = []
    for dim in dims:
        values = p.get(dim)
        if values is None:
            raise UsageError(f"model {kind!r} needs --{dim}")
        axes.append([(dim, v) for v in values])
    rows = [_model_row(kind, p, link, dict(combo)) for combo in itertools.product(*axes)]
    _emit(p, sweep.MODEL_COLUMNS, rows)
    return 0


# ---------------------------------------------------------------------------
# sim


def _sim_traffic(p: dict, link: LinkConfig, rho: float | None) -> TrafficSpec:
    kind = p["traffic"]
    if kind == "poisson":
        return poisson_traffic(rho, link, p["frame_bits"])
    if kind == "pareto":
        return pareto_traffic(rho, link, p["frame_bits"], shape=p["shape"])
    if kind == "periodic":
        period = _require(p, "period", "periodic traffic needs a period")
        return TrafficSpec(process=Periodic(period=period), frame_bits=p["frame_bits"])
    return TrafficSpec(process=TraceProcess(path=p["trace"]), frame_bits=p["frame_bits"])


def _trace_paths(base: str | None, n_points: int) -> list[str | None]:
    if base is None:
        return [None] * n_points
    if n_points == 1:
        return [base]
    stem, ext = os.path.splitext(base)
    return [f"{stem}-{i:03d}{ext}" for i in range(n_points)]


def cmd_sim(p: dict) -> int:
    link = _build_link(p)
    kind = p["traffic"]
    if kind in ("poisson", "pareto"):
        rhos = _require(p, "rho", f"{kind} traffic sweeps offered load")
    else:
        if p.get("rho") is not None:
            raise UsageError(f"{kind} traffic has a fixed rate; drop --rho")
        rhos = (None,)
        if kind == "trace":
            _require(p, "trace", "trace traffic needs an arrival trace file")
    bunches = p.get("bunch")
    coal_axis = [None] if bunches is None else list(bunches)
    n_frames = p["frames"]
    if kind == "trace":
        n_frames = min(n_frames, len(read_trace(p["trace"])))

    points = list(itertools.product(p["hysteresis"], p["delay"], coal_axis, rhos))
    paths = _trace_paths(p.get("emit_trace"), len(points))
    jobs = []
    for idx, (hyst, delay, bunch, rho) in enumerate(points):
        traffic = _sim_traffic(p, link, rho)
        coal = None
        if bunch is not None:
            coal = CoalescerConfig(bunch=bunch, propagation=p["propagation"])
        jobs.append(
            sweep.SimJob(
                index=idx,
                traffic=traffic,
                n_frames=n_frames,
                eee=EeeConfig(hysteresis=hyst, wake_delay=delay),
                link=link,
                n_reps=p["reps"],
                base_seed=p["seed"] + idx * p["reps"],
                coal=coal,
                emit_trace=paths[idx],
            )
        )
    outcomes = sweep.run_sim_jobs(jobs, p["jobs"])

    rows = []
    for job, outcome in zip(jobs, outcomes):
        hyst, delay, bunch, rho = points[job.index]
        traffic = job.traffic
        row = _link_cells(p, link)
        row.update(
            {
                "traffic": kind,
                "shape": p["shape"] if kind == "pareto" else None,
                "rho": traffic.load(link) if kind == "periodic" else rho,
                "rate_fps": None if kind == "trace" else traffic.rate,
                "hysteresis_s": hyst,
                "wake_delay_s": delay,
                "bunch_s": bunch,
                "propagation_s": p["propagation"] if bunch is not None else None,
                "n_frames": job.n_frames,
                "reps": job.n_reps,
                "base_seed": job.base_seed,
                "trace_path": outcome.trace_path,
                "trace_lpi_events": outcome.trace_lpi_events,
                "trace_rho_lpi": outcome.trace_rho_lpi,
            }
        )
        for name in ("rho_lpi", "sigma", "mean_wait_s", "p95_wait_s", "lpi_events_per_s"):
            row[f"{name}_mean"] = outcome.summary.mean[name]
            row[f"{name}_ci95"] = outcome.summary.ci95_halfwidth[name]
        rows.append(row)
    _emit(p, sweep.SIM_COLUMNS, rows)
    return 0


# ---------------------------------------------------------------------------
# tune


def _sim_search_bunch(
    traffic: TrafficSpec,
    p: dict,
    eee: EeeConfig,
    link: LinkConfig,
    target: float,
    seed: int,
    hint: float,
) -> float | None:
    """Smallest bunch whose simulated sleeping time reaches `target`."""

    def sleeping(bunch: float) -> float:
        coal = CoalescerConfig(bunch=bunch) if bunch > 0 else None
        return simulate_once(
            traffic, p["frames"], eee, link, seed, coal
        ).rho_lpi_measured

    if sleeping(0.0) >= target:
        return 0.0
    hi = max(hint, eee.hysteresis + link.t_sleep + link.t_wake, 1e-4)
    for _ in range(24):
        if sleeping(hi) >= target:
            break
        hi *= 2.0
    else:
        return None
    lo = 0.0
    for _ in range(30):
        if hi - lo <= max(1e-7, 1e-3 * hi):
            break
        mid = (lo + hi) / 2.0
        if sleeping(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def _format_us(seconds: float) -> str:
    return f"{seconds * 1e6:.3f} us"


def cmd_tune(p: dict) -> int:
    target = _require(p, "target", "which consumption target to tune for")
    link = _build_link(p)
    eee = EeeConfig(hysteresis=p["hysteresis"], wake_delay=p["delay"])
    rhos = p.get("rho") or ()
    if target == "frame-tx" and not rhos:
        raise UsageError("frame-tx tuning needs --rho (the target is load-dependent)")

    bound = None
    if target == "ideal":
        bound = bunch_bound_ideal(eee, link, p["frame_bits"], p["delta"])

    rows = []
    report: list[str] = []
    if target == "ideal":
        report.append(
            f"target: sleeping time within {p['delta']:g} of the ideal 1 - rho"
        )
        report.append(f"hysteresis {_format_us(eee.hysteresis)}, "
                      f"worst-case load {bound.worst_case_load:.6f}")
        report.append(f"bunch upper bound: exact {_format_us(bound.bunch_exact)}, "
                      f"approx h*/delta {_format_us(bound.bunch_approx)}")
    else:
        report.append("target: sleeping time of the frame-transmission policy")

    for idx, rho in enumerate(rhos):
        lam = lambda_from_load(rho, link, p["frame_bits"])
        traffic = poisson_traffic(rho, link, p["frame_bits"])
        row = _link_cells(p, link)
        row.update(
            target=target,
            delta=p["delta"] if target == "ideal" else None,
            rho=rho,
            rate_fps=lam,
            hysteresis_s=eee.hysteresis,
            wake_delay_s=eee.wake_delay,
        )
        if target == "frame-tx":
            res = bunch_match_frame_tx(lam, rho, eee, link)
            goal = sleep_fraction_frame_tx(traffic, link)
            row.update(
                target_rho_lpi=goal,
                bunch_exact_s=res.bunch_exact,
                bunch_approx_s=res.bunch_approx,
                bunch_exact_raw_s=res.bunch_exact_raw,
                clamped=res.clamped,
            )
            note = " (no bunching needed)" if res.clamped else ""
            report.append(
                f"rho={rho:g}: bunch exact {_format_us(res.bunch_exact)}, "
                f"approx {_format_us(res.bunch_approx)}{note}"
            )
            hint = max(res.bunch_exact, res.bunch_approx)
        else:
            exact = bunch_for_ideal(lam, rho, eee, link, p["delta"])
            goal = 1.0 - rho - p["delta"]
            row.update(
                target_rho_lpi=goal,
                bunch_exact_s=exact,
                clamped=exact == 0.0,
                bound_s=bound.bunch_exact,
                bound_approx_s=bound.bunch_approx,
                worst_case_load=bound.worst_case_load,
            )
            note = " (no bunching needed)" if exact == 0.0 else ""
            report.append(f"rho={rho:g}: bunch exact {_format_us(exact)}{note}")
            hint = max(exact, bound.bunch_exact)
        if p["sim_search"]:
            found = _sim_search_bunch(
                traffic, p, eee, link, goal, p["seed"] + idx, hint
            )
            row["bunch_sim_s"] = found
            if found is not None:
                report[-1] += f"; simulator needs {_format_us(found)}"
        rows.append(row)

    if target == "ideal" and not rhos:
        row = _link_cells(p, link)
        row.update(
            target=target,
            delta=p["delta"],
            hysteresis_s=eee.hysteresis,
            wake_delay_s=eee.wake_delay,
            bound_s=bound.bunch_exact,
            bound_approx_s=bound.bunch_approx,
            worst_case_load=bound.worst_case_load,
        )
        rows.append(row)

    if p["format"] == "csv":
        _emit(p, sweep.TUNE_COLUMNS, rows)
    else:
        text = "\n".join(report) + "\n"
        if p.get("out"):
            with open(p["out"], "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# coalesce / analyze


def cmd_coalesce(p: dict) -> int:
    path = _require(p, "input", "which trace to transform")
    stream = read_trace(path)
    coal = CoalescerConfig(bunch=p["bunch"], propagation=p["propagation"])
    link = LinkConfig(capacity=p["capacity"])
    shaped = coalesce_stream(stream, coal, link)
    if p.get("out"):
        write_trace(shaped, p["out"])
    else:
        for t, s in zip(shaped.timestamps_ns.tolist(), shaped.sizes_bits.tolist()):
            sys.stdout.write(f"{t} {s}\n")
    return 0


def cmd_analyze(p: dict) -> int:
    path = _require(p, "trace_in", "which departure trace to analyze")
    count = _require(p, "count", "the LPI-event count behind the trace")
    link = _build_link(p)
    eee = EeeConfig(hysteresis=p["hysteresis"], wake_delay=p["delay"])
    est = estimate_lpi(read_trace(path), link, eee, count)
    row = _link_cells(p, link)
    row.pop("frame_bits", None)
    row.update(
        trace=path,
        hysteresis_s=eee.hysteresis,
        wake_delay_s=eee.wake_delay,
        lpi_event_count=count,
        lpi_events_per_s=est.lpi_events_per_s,
        mean_lpi_duration_s=est.mean_lpi_duration,
        time_in_lpi_pct=est.time_in_lpi_pct,
    )
    _emit(p, sweep.ANALYZE_COLUMNS, [row])
    return 0


# ---------------------------------------------------------------------------


_COMMANDS = {
    "model": cmd_model,
    "sim": cmd_sim,
    "tune": cmd_tune,
    "coalesce": cmd_coalesce,
    "analyze": cmd_analyze,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = merge_params(args.command, args)
        return _COMMANDS[args.command](params)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
