/**
 * Plot specifications: what to read, which quantity to draw, where to write.
 *
 * A spec arrives either as a JSON file or as command-line flags (see
 * `main.ts`).  `kind: "timeseries"` draws one curve per input series CSV
 * (alignment or orientation vs time) with the pulse envelopes along the
 * panel bottom; `kind: "sweep"` draws extrema columns against the swept
 * parameter.
 */

import { readFileSync } from "node:fs";

export type PlotKind = "timeseries" | "sweep";

export interface PlotInput {
  path: string;
  /** overrides the temperature recorded in the CSV header */
  temperature?: number;
  label?: string;
}

export interface PlotSpec {
  kind: PlotKind;
  inputs: PlotInput[];
  /** timeseries quantity to plot */
  series?: "alignment" | "orientation";
  /** sweep columns to plot; supports the virtual column "abs_orient_after" */
  columns?: string[];
  xLabel?: string;
  yLabel?: string;
  title?: string;
  /** .svg output path; the .png companion is written next to it */
  output: string;
  width?: number;
  height?: number;
}

export class SpecError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SpecError";
  }
}

export function validateSpec(raw: unknown): PlotSpec {
  const spec = raw as Partial<PlotSpec>;
  if (spec.kind !== "timeseries" && spec.kind !== "sweep") {
    throw new SpecError(`kind must be "timeseries" or "sweep", got ${spec.kind}`);
  }
  if (!Array.isArray(spec.inputs) || spec.inputs.length === 0) {
    throw new SpecError("inputs must be a non-empty array of {path, ...}");
  }
  for (const input of spec.inputs) {
    if (typeof input.path !== "string" || input.path.length === 0) {
      throw new SpecError("every input needs a path");
    }
  }
  if (typeof spec.output !== "string" || !spec.output.endsWith(".svg")) {
    throw new SpecError("output must be a .svg path");
  }
  if (spec.kind === "timeseries") {
    if (spec.series !== undefined && spec.series !== "alignment"
        && spec.series !== "orientation") {
      throw new SpecError(`series must be "alignment" or "orientation"`);
    }
  } else if (spec.columns !== undefined) {
    if (!Array.isArray(spec.columns) || spec.columns.length === 0) {
      throw new SpecError("columns must be a non-empty array");
    }
  }
  return spec as PlotSpec;
}

export function loadSpec(path: string): PlotSpec {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new SpecError(`cannot read spec file ${path}: ${err}`);
  }
  return validateSpec(parsed);
}
