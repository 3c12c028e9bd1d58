/**
 * Drives the eeesim CLI to produce the CSVs a figure needs.
 *
 * The CLI is the package boundary: this module shells out to the installed
 * `eeesim` executable (override with the EEESIM_BIN environment variable,
 * e.g. "python3 -m eeesim.cli") and never imports simulation code.
 */

import { execFileSync } from "node:child_process";
import { mkdirSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { parseTable, type Table } from "./csv.js";
import type { Recipe } from "./recipe.js";

export class CliError extends Error {}

/** One eeesim invocation; --config and --out are appended by the runner. */
export interface DataJob {
  /** CSV file name inside the work directory, also the lookup key. */
  out: string;
  /** Subcommand plus any per-job flag overrides. */
  args: string[];
  /** Columns the figure will read from this file. */
  required: string[];
}

export function eeesimCommand(): string[] {
  const override = process.env["EEESIM_BIN"];
  if (override && override.trim() !== "") {
    return override.trim().split(/\s+/);
  }
  return ["eeesim"];
}

export function runEeesim(args: string[]): void {
  const [bin, ...prefix] = eeesimCommand();
  const argv = [...prefix, ...args];
  try {
    execFileSync(bin!, argv, { stdio: ["ignore", "ignore", "pipe"] });
  } catch (err) {
    const stderr =
      err instanceof Object && "stderr" in err && err.stderr instanceof Buffer
        ? err.stderr.toString("utf-8").trim()
        : String(err);
    throw new CliError(`${bin} ${argv.join(" ")} failed: ${stderr}`);
  }
}

/**
 * Run every job of a figure against its recipe and parse the results.
 *
 * Returns the tables keyed by the job's file name, already validated
 * against the columns the figure declared it needs.
 */
export function generateFigureData(
  recipe: Recipe,
  jobs: DataJob[],
  workDir: string,
): Record<string, Table> {
  mkdirSync(workDir, { recursive: true });
  const tables: Record<string, Table> = {};
  for (const job of jobs) {
    const outPath = join(workDir, job.out);
    runEeesim([...job.args, "--config", recipe.path, "--out", outPath]);
    tables[job.out] = parseTable(
      readFileSync(outPath, "utf-8"),
      job.out,
      job.required,
    );
  }
  return tables;
}
