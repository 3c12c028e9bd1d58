#!/usr/bin/env node
/**
 * Batch figure renderer.
 *
 *   eeesim-figures [figure ...] --recipes DIR --out DIR
 *
 * For each requested figure (default: all) this regenerates the CSVs by
 * running the eeesim CLI with the shipped recipe, then renders one SVG.
 * Exit codes: 0 success, 2 usage error, 1 data or rendering failure.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join, resolve } from "node:path";

import { FIGURES, FIGURE_IDS } from "./figures.js";
import { loadRecipe } from "./recipe.js";
import { generateFigureData } from "./runner.js";
import { renderSvg } from "./render.js";

export interface RenderResult {
  id: string;
  svg: string;
  csvDir: string;
}

/** Regenerate one figure's data via the CLI and render it to SVG text. */
export function renderFigure(
  figureId: string,
  recipesDir: string,
  dataDir: string,
): RenderResult {
  const spec = FIGURES[figureId];
  if (!spec) {
    throw new Error(
      `unknown figure ${JSON.stringify(figureId)} ` +
        `(known: ${FIGURE_IDS.join(", ")})`,
    );
  }
  const recipe = loadRecipe(recipesDir, figureId);
  const csvDir = join(dataDir, figureId);
  const tables = generateFigureData(recipe, spec.jobs, csvDir);
  return { id: figureId, svg: renderSvg(spec.build(tables, recipe.title)), csvDir };
}

interface CliArgs {
  figures: string[];
  recipesDir: string;
  outDir: string;
}

export function parseArgs(argv: string[]): CliArgs {
  let recipesDir = "../recipes";
  let outDir = "out";
  const figures: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--recipes" || arg === "--out") {
      const value = argv[++i];
      if (value === undefined) {
        throw new UsageError(`${arg} needs a value`);
      }
      if (arg === "--recipes") recipesDir = value;
      else outDir = value;
    } else if (arg === "--help" || arg === "-h") {
      throw new UsageError("");
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown option ${arg}`);
    } else if (!FIGURE_IDS.includes(arg)) {
      throw new UsageError(
        `unknown figure ${JSON.stringify(arg)} (known: ${FIGURE_IDS.join(", ")})`,
      );
    } else {
      figures.push(arg);
    }
  }
  return {
    figures: figures.length > 0 ? figures : [...FIGURE_IDS],
    recipesDir,
    outDir,
  };
}

class UsageError extends Error {}

const USAGE = `usage: eeesim-figures [figure ...] [--recipes DIR] [--out DIR]
figures: ${FIGURE_IDS.join(", ")} (default: all)
requires the eeesim CLI on PATH (or EEESIM_BIN)`;

function main(): number {
  let args: CliArgs;
  try {
    args = parseArgs(process.argv.slice(2));
  } catch (err) {
    if (err instanceof UsageError) {
      const out = err.message === "" ? process.stdout : process.stderr;
      if (err.message !== "") out.write(`error: ${err.message}\n`);
      out.write(USAGE + "\n");
      return err.message === "" ? 0 : 2;
    }
    throw err;
  }
  const recipesDir = resolve(args.recipesDir);
  const outDir = resolve(args.outDir);
  mkdirSync(outDir, { recursive: true });
  for (const id of args.figures) {
    try {
      const result = renderFigure(id, recipesDir, join(outDir, "data"));
      const svgPath = join(outDir, `${id}.svg`);
      writeFileSync(svgPath, result.svg);
      process.stdout.write(`${id}: ${svgPath} (data: ${result.csvDir})\n`);
    } catch (err) {
      process.stderr.write(`${id}: ${err instanceof Error ? err.message : err}\n`);
      return 1;
    }
  }
  return 0;
}

// Run only as a script, not when imported by tests.
if (
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href
) {
  process.exit(main());
}
