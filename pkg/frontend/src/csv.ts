/**
 * Typed access to the versioned CSV files produced by the eeesim CLI.
 *
 * The file format is the only coupling to the simulation package: a header
 * row whose first column is `schema_version`, empty cells for
 * not-applicable values, `true`/`false` booleans, and full-precision
 * decimal floats.
 */

import Papa from "papaparse";

/** Schema generation this renderer understands. */
export const SUPPORTED_SCHEMA_VERSION = "1";

export class CsvSchemaError extends Error {}

export type Row = Record<string, string>;

export interface Table {
  columns: string[];
  rows: Row[];
}

/**
 * Parse CSV text and enforce the schema contract.
 *
 * @param text     raw CSV contents
 * @param source   label used in error messages (usually the file name)
 * @param required columns the caller is about to read
 */
export function parseTable(
  text: string,
  source: string,
  required: string[] = [],
): Table {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new CsvSchemaError(`${source}: malformed CSV: ${first.message}`);
  }
  const grid = parsed.data;
  if (grid.length === 0) {
    throw new CsvSchemaError(`${source}: empty CSV (no header row)`);
  }
  const columns = grid[0]!;
  if (columns[0] !== "schema_version") {
    throw new CsvSchemaError(
      `${source}: first column is ${JSON.stringify(columns[0])}, ` +
        `expected "schema_version"`,
    );
  }
  const missing = required.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new CsvSchemaError(
      `${source}: missing required column(s): ${missing.join(", ")}`,
    );
  }
  const rows = grid.slice(1).map((cells, i) => {
    const row: Row = {};
    columns.forEach((col, j) => {
      row[col] = cells[j] ?? "";
    });
    const version = row["schema_version"];
    if (version !== SUPPORTED_SCHEMA_VERSION) {
      throw new CsvSchemaError(
        `${source}: row ${i + 1} has schema_version ` +
          `${JSON.stringify(version)}, this renderer supports ` +
          `"${SUPPORTED_SCHEMA_VERSION}"`,
      );
    }
    return row;
  });
  if (rows.length === 0) {
    throw new CsvSchemaError(`${source}: no data rows`);
  }
  return { columns, rows };
}

/** Numeric cell; empty cells are not-applicable and come back as null. */
export function num(row: Row, col: string): number | null {
  const cell = row[col];
  if (cell === undefined) {
    throw new CsvSchemaError(`column ${JSON.stringify(col)} not in row`);
  }
  if (cell === "") return null;
  const value = Number(cell);
  if (Number.isNaN(value)) {
    throw new CsvSchemaError(
      `column ${JSON.stringify(col)}: not a number: ${JSON.stringify(cell)}`,
    );
  }
  return value;
}

/** Numeric cell that must be present. */
export function reqNum(row: Row, col: string): number {
  const value = num(row, col);
  if (value === null) {
    throw new CsvSchemaError(`column ${JSON.stringify(col)} is empty`);
  }
  return value;
}

/** Boolean cell (`true`/`false`). */
export function bool(row: Row, col: string): boolean {
  const cell = row[col];
  if (cell === "true") return true;
  if (cell === "false") return false;
  throw new CsvSchemaError(
    `column ${JSON.stringify(col)}: not a boolean: ${JSON.stringify(cell)}`,
  );
}

/** Distinct values of a column, in first-appearance order. */
export function distinct(rows: Row[], col: string): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const row of rows) {
    const cell = row[col] ?? "";
    if (!seen.has(cell)) {
      seen.add(cell);
      out.push(cell);
    }
  }
  return out;
}
