/**
 * Reader for the simulator's CSV outputs.
 *
 * Both file kinds share the same shape: optional `#` comment lines (the
 * first of which may embed the resolved run config as JSON), a header row,
 * then numeric rows.  Series files carry
 * `time_ps,orientation,alignment,envelope_1,envelope_2`; sweep files carry
 * `param`, the extrema columns and metadata.
 */

import { readFileSync } from "node:fs";

export class EmptyCsvError extends Error {
  constructor(path: string) {
    super(`${path}: no data rows`);
    this.name = "EmptyCsvError";
  }
}

export class MissingColumnError extends Error {
  constructor(path: string, column: string, available: string[]) {
    super(`${path}: column "${column}" not found (have: ${available.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export interface CsvTable {
  path: string;
  header: string[];
  comments: string[];
  /** column name -> raw cell strings, row-aligned */
  cells: Map<string, string[]>;
  rowCount: number;
}

export function parseCsv(path: string): CsvTable {
  const text = readFileSync(path, "utf-8");
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  const comments = lines
    .filter((ln) => ln.startsWith("#"))
    .map((ln) => ln.replace(/^#\s?/, ""));
  const body = lines.filter((ln) => !ln.startsWith("#"));
  if (body.length < 2) throw new EmptyCsvError(path);
  const header = body[0].split(",");
  const cells = new Map<string, string[]>(header.map((name) => [name, []]));
  for (const line of body.slice(1)) {
    const parts = line.split(",");
    header.forEach((name, i) => cells.get(name)!.push(parts[i] ?? ""));
  }
  return { path, header, comments, cells, rowCount: body.length - 1 };
}

export function numericColumn(table: CsvTable, column: string): number[] {
  const raw = table.cells.get(column);
  if (raw === undefined) {
    throw new MissingColumnError(table.path, column, table.header);
  }
  return raw.map((v) => Number(v));
}

/** Temperature (K) recorded in the embedded config comment, if present. */
export function temperatureFromComments(table: CsvTable): number | undefined {
  for (const comment of table.comments) {
    const idx = comment.indexOf("config: ");
    if (idx < 0) continue;
    try {
      const config = JSON.parse(comment.slice(idx + "config: ".length));
      const temps = config?.temperatures;
      if (Array.isArray(temps) && temps.length > 0) return Number(temps[0]);
    } catch {
      // malformed embedded config: fall through, caller may label manually
    }
  }
  return undefined;
}
