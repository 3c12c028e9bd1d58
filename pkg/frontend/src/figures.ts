/**
 * One specification per standard figure: which CLI runs produce its data
 * and how the resulting tables map onto chart series.
 *
 * Conventions shared by all figures: analytic results draw as lines,
 * simulation results as point markers; Poisson runs use filled symbols,
 * heavy-tailed (Pareto) runs empty ones; series of the same parameter
 * value share a palette color across lines and points.
 */

import type { EChartsOption, SeriesOption } from "echarts";

import { bool, distinct, num, reqNum, type Row, type Table } from "./csv.js";
import type { DataJob } from "./runner.js";

export interface FigureSpec {
  id: string;
  jobs: DataJob[];
  build(tables: Record<string, Table>, title: string): EChartsOption;
}

/** Fixed palette so a parameter value keeps its color across series. */
export const PALETTE = [
  "#3366cc",
  "#dc3912",
  "#109618",
  "#ff9900",
  "#990099",
  "#0099c6",
  "#dd4477",
] as const;

function color(i: number): string {
  return PALETTE[i % PALETTE.length]!;
}

/** 0.0006 -> "600 µs", 0.006 -> "6 ms", 0 -> "0". */
export function fmtTime(seconds: number): string {
  if (seconds === 0) return "0";
  const us = Number((seconds * 1e6).toPrecision(6));
  if (us >= 1000) return `${Number((us / 1000).toPrecision(6))} ms`;
  return `${us} µs`;
}

function sortByX(points: [number, number][]): [number, number][] {
  return [...points].sort((a, b) => a[0] - b[0]);
}

/** Rows with this column equal to the given cell text. */
function where(rows: Row[], col: string, cell: string): Row[] {
  return rows.filter((r) => r[col] === cell);
}

function line(
  name: string,
  data: [number, number][],
  c: string,
  opts: { dashed?: boolean; axis?: number } = {},
): SeriesOption {
  return {
    name,
    type: "line",
    showSymbol: false,
    data: sortByX(data),
    color: c,
    lineStyle: { width: 2, type: opts.dashed ? "dashed" : "solid" },
    xAxisIndex: opts.axis ?? 0,
    yAxisIndex: opts.axis ?? 0,
  };
}

function points(
  name: string,
  data: [number, number][],
  c: string,
  opts: { empty?: boolean; symbol?: string; axis?: number } = {},
): SeriesOption {
  return {
    name,
    type: "scatter",
    symbol: opts.symbol ?? "circle",
    symbolSize: 9,
    data: sortByX(data),
    color: c,
    itemStyle: opts.empty
      ? { color: "#ffffff", borderColor: c, borderWidth: 2 }
      : {},
    xAxisIndex: opts.axis ?? 0,
    yAxisIndex: opts.axis ?? 0,
  };
}

/** (x, y) pairs from rows; rows whose y cell is empty are skipped. */
function pairs(
  rows: Row[],
  xcol: string,
  ycol: string,
  map: (x: number, y: number) => [number, number] = (x, y) => [x, y],
): [number, number][] {
  const out: [number, number][] = [];
  for (const row of rows) {
    const y = num(row, ycol);
    if (y === null) continue;
    out.push(map(reqNum(row, xcol), y));
  }
  return out;
}

/** Model rows flagged valid; invalid grid points carry no result. */
function validRows(table: Table): Row[] {
  return table.rows.filter((r) => bool(r, "valid"));
}

function baseOption(title: string): EChartsOption {
  return {
    animation: false,
    title: { text: title, left: "center", top: 8 },
    legend: { bottom: 4, type: "plain" },
    textStyle: { fontFamily: "sans-serif" },
  };
}

const LOAD_AXIS = {
  type: "log" as const,
  name: "offered load (fraction of capacity)",
  nameLocation: "middle" as const,
  nameGap: 28,
};

const SLEEP_AXIS = {
  type: "value" as const,
  name: "normalized sleeping time",
  min: 0,
  max: 1,
};

// --- fig2: consumption vs load for the two presets -----------------------

const fig2: FigureSpec = {
  id: "fig2",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["rho", "sigma", "hysteresis_s", "valid"],
    },
    {
      out: "frametx.csv",
      args: ["model", "frame-tx"],
      required: ["rho", "sigma", "valid"],
    },
    {
      out: "sim.csv",
      args: ["sim"],
      required: ["rho", "sigma_mean", "hysteresis_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const frametx = validRows(tables["frametx.csv"]!);
    const sim = tables["sim.csv"]!.rows;
    const series: SeriesOption[] = [];
    distinct(model, "hysteresis_s").forEach((h, i) => {
      const label = `h* = ${fmtTime(Number(h))}`;
      series.push(
        line(`${label} (model)`, pairs(where(model, "hysteresis_s", h), "rho", "sigma"), color(i)),
      );
      series.push(
        points(`${label} (sim)`, pairs(where(sim, "hysteresis_s", h), "rho", "sigma_mean"), color(i)),
      );
    });
    series.push(
      line("frame transmission (model)", pairs(frametx, "rho", "sigma"), "#555555", {
        dashed: true,
      }),
    );
    return {
      ...baseOption(title),
      grid: { left: 70, right: 30, top: 50, bottom: 90 },
      xAxis: LOAD_AXIS,
      yAxis: { type: "value", name: "normalized consumption", min: 0, max: 1 },
      series,
    };
  },
};

// --- fig4: sleeping time vs load per hysteresis ---------------------------

const fig4: FigureSpec = {
  id: "fig4",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["rho", "rho_lpi", "hysteresis_s", "valid"],
    },
    {
      out: "sim_poisson.csv",
      args: ["sim"],
      required: ["rho", "rho_lpi_mean", "hysteresis_s"],
    },
    {
      out: "sim_pareto.csv",
      args: ["sim", "--traffic", "pareto"],
      required: ["rho", "rho_lpi_mean", "hysteresis_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const poisson = tables["sim_poisson.csv"]!.rows;
    const pareto = tables["sim_pareto.csv"]!.rows;
    const series: SeriesOption[] = [];
    distinct(model, "hysteresis_s").forEach((h, i) => {
      const label = `h* = ${fmtTime(Number(h))}`;
      series.push(
        line(`${label} (model)`, pairs(where(model, "hysteresis_s", h), "rho", "rho_lpi"), color(i)),
      );
      series.push(
        points(
          `${label} (sim, Poisson)`,
          pairs(where(poisson, "hysteresis_s", h), "rho", "rho_lpi_mean"),
          color(i),
        ),
      );
      series.push(
        points(
          `${label} (sim, Pareto)`,
          pairs(where(pareto, "hysteresis_s", h), "rho", "rho_lpi_mean"),
          color(i),
          { empty: true },
        ),
      );
    });
    return {
      ...baseOption(title),
      grid: { left: 70, right: 30, top: 50, bottom: 110 },
      xAxis: LOAD_AXIS,
      yAxis: SLEEP_AXIS,
      series,
    };
  },
};

// --- fig5: sleeping time vs wake delay, one panel per load ----------------

const fig5: FigureSpec = {
  id: "fig5",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["rho", "rho_lpi", "hysteresis_s", "wake_delay_s", "valid"],
    },
    {
      out: "sim_poisson.csv",
      args: ["sim"],
      required: ["rho", "rho_lpi_mean", "hysteresis_s", "wake_delay_s"],
    },
    {
      out: "sim_pareto.csv",
      args: ["sim", "--traffic", "pareto"],
      required: ["rho", "rho_lpi_mean", "hysteresis_s", "wake_delay_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const poisson = tables["sim_poisson.csv"]!.rows;
    const pareto = tables["sim_pareto.csv"]!.rows;
    const loads = distinct(model, "rho");
    const grids = loads.map((_, p) => ({
      left: `${7 + p * 31.5}%`,
      width: "26%",
      top: 80,
      bottom: 110,
    }));
    const titles = loads.map((rho, p) => ({
      text: `load ${Number(rho)}`,
      left: `${7 + p * 31.5 + 13}%`,
      top: 52,
      textAlign: "center" as const,
      textStyle: { fontSize: 13, fontWeight: "normal" as const },
    }));
    const series: SeriesOption[] = [];
    loads.forEach((rho, p) => {
      const m = where(model, "rho", rho);
      const sp = where(poisson, "rho", rho);
      const sq = where(pareto, "rho", rho);
      distinct(model, "hysteresis_s").forEach((h, i) => {
        const label = `h* = ${fmtTime(Number(h))}`;
        const toUs = (x: number, y: number): [number, number] => [x * 1e6, y];
        series.push(
          line(`${label} (model)`, pairs(where(m, "hysteresis_s", h), "wake_delay_s", "rho_lpi", toUs), color(i), { axis: p }),
        );
        series.push(
          points(
            `${label} (sim, Poisson)`,
            pairs(where(sp, "hysteresis_s", h), "wake_delay_s", "rho_lpi_mean", toUs),
            color(i),
            { axis: p },
          ),
        );
        series.push(
          points(
            `${label} (sim, Pareto)`,
            pairs(where(sq, "hysteresis_s", h), "wake_delay_s", "rho_lpi_mean", toUs),
            color(i),
            { empty: true, axis: p },
          ),
        );
      });
    });
    return {
      ...baseOption(title),
      title: [
        { text: title, left: "center", top: 8 },
        ...titles,
      ],
      grid: grids,
      xAxis: loads.map((_, p) => ({
        type: "value" as const,
        name: "wake delay (µs)",
        nameLocation: "middle" as const,
        nameGap: 28,
        gridIndex: p,
      })),
      yAxis: loads.map((_, p) => ({ ...SLEEP_AXIS, gridIndex: p })),
      series,
    };
  },
};

// --- fig6: sleeping time vs bunch length at 1% load ------------------------

const fig6: FigureSpec = {
  id: "fig6",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["bunch_s", "rho_lpi", "hysteresis_s", "valid"],
    },
    {
      out: "sim_poisson.csv",
      args: ["sim"],
      required: ["bunch_s", "rho_lpi_mean", "hysteresis_s"],
    },
    {
      out: "sim_pareto.csv",
      args: ["sim", "--traffic", "pareto"],
      required: ["bunch_s", "rho_lpi_mean", "hysteresis_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const poisson = tables["sim_poisson.csv"]!.rows;
    const pareto = tables["sim_pareto.csv"]!.rows;
    const toUs = (x: number, y: number): [number, number] => [x * 1e6, y];
    const series: SeriesOption[] = [];
    distinct(tables["model.csv"]!.rows, "hysteresis_s").forEach((h, i) => {
      const label = `h* = ${fmtTime(Number(h))}`;
      series.push(
        line(`${label} (model)`, pairs(where(model, "hysteresis_s", h), "bunch_s", "rho_lpi", toUs), color(i)),
      );
      series.push(
        points(
          `${label} (sim, Poisson)`,
          pairs(where(poisson, "hysteresis_s", h), "bunch_s", "rho_lpi_mean", toUs),
          color(i),
        ),
      );
      series.push(
        points(
          `${label} (sim, Pareto)`,
          pairs(where(pareto, "hysteresis_s", h), "bunch_s", "rho_lpi_mean", toUs),
          color(i),
          { empty: true },
        ),
      );
    });
    return {
      ...baseOption(title),
      grid: { left: 70, right: 30, top: 50, bottom: 110 },
      xAxis: {
        type: "log",
        name: "bunch length (µs)",
        nameLocation: "middle",
        nameGap: 28,
      },
      yAxis: SLEEP_AXIS,
      series,
    };
  },
};

// --- fig7: sleeping time vs load under pre-coalescing (Pareto) ------------

const fig7: FigureSpec = {
  id: "fig7",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["rho", "rho_lpi", "bunch_s", "valid"],
    },
    {
      out: "sim.csv",
      args: ["sim"],
      required: ["rho", "rho_lpi_mean", "bunch_s", "wake_delay_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const sim = tables["sim.csv"]!.rows;
    const series: SeriesOption[] = [];
    const bunches = distinct(tables["model.csv"]!.rows, "bunch_s");
    bunches.forEach((b, i) => {
      series.push(
        line(
          `B = ${fmtTime(Number(b))} (model)`,
          pairs(where(model, "bunch_s", b), "rho", "rho_lpi"),
          color(i),
        ),
      );
      const simB = where(sim, "bunch_s", b);
      distinct(simB, "wake_delay_s").forEach((d, j) => {
        series.push(
          points(
            `B = ${fmtTime(Number(b))}, d = ${fmtTime(Number(d))} (sim)`,
            pairs(where(simB, "wake_delay_s", d), "rho", "rho_lpi_mean"),
            color(i),
            { symbol: j === 0 ? "circle" : "triangle", empty: j !== 0 },
          ),
        );
      });
    });
    return {
      ...baseOption(title),
      grid: { left: 70, right: 30, top: 50, bottom: 110 },
      xAxis: LOAD_AXIS,
      yAxis: SLEEP_AXIS,
      series,
    };
  },
};

// --- fig8: bunch length needed for a target vs load, two presets -----------

const fig8: FigureSpec = {
  id: "fig8",
  jobs: [
    {
      out: "frametx_aggressive.csv",
      args: ["tune", "frame-tx"],
      required: ["rho", "bunch_exact_s", "bunch_approx_s", "bunch_sim_s"],
    },
    {
      out: "ideal_aggressive.csv",
      args: ["tune", "ideal"],
      required: ["rho", "bunch_exact_s", "bound_s", "bunch_sim_s"],
    },
    {
      out: "frametx_conservative.csv",
      args: ["tune", "frame-tx", "--preset", "non-aggressive"],
      required: ["rho", "bunch_exact_s", "bunch_approx_s", "bunch_sim_s"],
    },
    {
      out: "ideal_conservative.csv",
      args: ["tune", "ideal", "--preset", "non-aggressive"],
      required: ["rho", "bunch_exact_s", "bound_s", "bunch_sim_s"],
    },
  ],
  build(tables, title) {
    const panels = [
      {
        name: "aggressive preset",
        ftx: tables["frametx_aggressive.csv"]!.rows,
        ideal: tables["ideal_aggressive.csv"]!.rows,
      },
      {
        name: "non-aggressive preset",
        ftx: tables["frametx_conservative.csv"]!.rows,
        ideal: tables["ideal_conservative.csv"]!.rows,
      },
    ];
    // log axis: drop zero-length bunches (they mean "no bunching needed")
    const toUs = (x: number, y: number): [number, number] => [x, y * 1e6];
    const positive = (pts: [number, number][]) => pts.filter(([, y]) => y > 0);
    const series: SeriesOption[] = [];
    panels.forEach((panel, p) => {
      series.push(
        line("match frame-tx, exact (model)", positive(pairs(panel.ftx, "rho", "bunch_exact_s", toUs)), color(0), { axis: p }),
      );
      series.push(
        line("match frame-tx, approx (model)", positive(pairs(panel.ftx, "rho", "bunch_approx_s", toUs)), color(0), { dashed: true, axis: p }),
      );
      series.push(
        line("ideal margin, per load (model)", positive(pairs(panel.ideal, "rho", "bunch_exact_s", toUs)), color(1), { axis: p }),
      );
      series.push(
        line("ideal margin, worst-case bound (model)", positive(pairs(panel.ideal, "rho", "bound_s", toUs)), color(2), { dashed: true, axis: p }),
      );
      series.push(
        points("smallest sufficient bunch, frame-tx (sim)", positive(pairs(panel.ftx, "rho", "bunch_sim_s", toUs)), color(0), { symbol: "diamond", axis: p }),
      );
      series.push(
        points("smallest sufficient bunch, ideal (sim)", positive(pairs(panel.ideal, "rho", "bunch_sim_s", toUs)), color(1), { empty: true, axis: p }),
      );
    });
    return {
      ...baseOption(title),
      title: [
        { text: title, left: "center", top: 8 },
        ...panels.map((panel, p) => ({
          text: panel.name,
          left: `${7 + p * 48 + 20}%`,
          top: 52,
          textAlign: "center" as const,
          textStyle: { fontSize: 13, fontWeight: "normal" as const },
        })),
      ],
      grid: panels.map((_, p) => ({
        left: `${7 + p * 48}%`,
        width: "40%",
        top: 80,
        bottom: 110,
      })),
      xAxis: panels.map((_, p) => ({ ...LOAD_AXIS, gridIndex: p })),
      yAxis: panels.map((_, p) => ({
        type: "log" as const,
        name: "bunch length (µs)",
        gridIndex: p,
      })),
      series,
    };
  },
};

// --- fig9: frame delay vs load with tuned bunches --------------------------

const fig9: FigureSpec = {
  id: "fig9",
  jobs: [
    {
      out: "model.csv",
      args: ["model"],
      required: ["rho", "bunch_s", "mean_wait_s", "valid"],
    },
    {
      out: "sim_h20.csv",
      args: ["sim", "--hysteresis", "20us", "--bunch", "200us"],
      required: ["rho", "mean_wait_s_mean", "p95_wait_s_mean", "bunch_s"],
    },
    {
      out: "sim_h600.csv",
      args: ["sim", "--hysteresis", "600us", "--bunch", "6ms"],
      required: ["rho", "mean_wait_s_mean", "p95_wait_s_mean", "bunch_s"],
    },
  ],
  build(tables, title) {
    const model = validRows(tables["model.csv"]!);
    const toUs = (x: number, y: number): [number, number] => [x, y * 1e6];
    const series: SeriesOption[] = [];
    const simFiles = ["sim_h20.csv", "sim_h600.csv"] as const;
    distinct(tables["model.csv"]!.rows, "bunch_s").forEach((b, i) => {
      const label = `B = ${fmtTime(Number(b))}`;
      series.push(
        line(`${label}, mean wait (model)`, pairs(where(model, "bunch_s", b), "rho", "mean_wait_s", toUs), color(i)),
      );
      const sim = simFiles
        .flatMap((f) => tables[f]!.rows)
        .filter((r) => Number(r["bunch_s"]) === Number(b));
      series.push(
        points(`${label}, mean wait (sim)`, pairs(sim, "rho", "mean_wait_s_mean", toUs), color(i)),
      );
      series.push(
        points(`${label}, 95th percentile (sim)`, pairs(sim, "rho", "p95_wait_s_mean", toUs), color(i), {
          symbol: "diamond",
          empty: true,
        }),
      );
    });
    return {
      ...baseOption(title),
      grid: { left: 80, right: 30, top: 50, bottom: 110 },
      xAxis: LOAD_AXIS,
      yAxis: { type: "log", name: "frame wait (µs)" },
      series,
    };
  },
};

export const FIGURES: Record<string, FigureSpec> = Object.fromEntries(
  [fig2, fig4, fig5, fig6, fig7, fig8, fig9].map((f) => [f.id, f]),
);

export const FIGURE_IDS = Object.keys(FIGURES);
