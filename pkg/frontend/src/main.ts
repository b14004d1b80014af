#!/usr/bin/env node
/**
 * figures — render simulator CSV outputs as SVG/PNG plots.
 *
 * Usage:
 *   figures spec.json
 *   figures --kind timeseries --input fig5a_T1K_series.csv --input fig5a_T30K_series.csv \
 *           --series alignment --out fig5a.svg
 *   figures --kind sweep --input fig7_sweep.csv \
 *           --column max_orient_pos_after --column max_orient_neg_after --out fig7.svg
 *
 * Inputs consume the simulator's CSV contract only; temperatures are read
 * from the embedded config header (override with --label / "temperature"
 * in the spec file).
 */

import { EmptyCsvError, MissingColumnError } from "./csv.js";
import { loadSpec, PlotSpec, SpecError, validateSpec } from "./spec.js";
import { render } from "./render.js";

function specFromFlags(argv: string[]): PlotSpec {
  const raw: Record<string, unknown> = { inputs: [] as unknown[] };
  const columns: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new SpecError(`${flag} needs a value`);
      return argv[i];
    };
    switch (flag) {
      case "--kind":
        raw.kind = next();
        break;
      case "--input":
        (raw.inputs as unknown[]).push({ path: next() });
        break;
      case "--series":
        raw.series = next();
        break;
      case "--column":
        columns.push(next());
        break;
      case "--out":
        raw.output = next();
        break;
      case "--title":
        raw.title = next();
        break;
      case "--x-label":
        raw.xLabel = next();
        break;
      case "--y-label":
        raw.yLabel = next();
        break;
      default:
        throw new SpecError(`unknown flag ${flag}`);
    }
  }
  if (columns.length > 0) raw.columns = columns;
  return validateSpec(raw);
}

export function main(argv: string[]): number {
  try {
    if (argv.length === 0) {
      throw new SpecError(
        "usage: figures <spec.json> | figures --kind ... --input ... --out out.svg",
      );
    }
    const spec =
      argv.length === 1 && !argv[0].startsWith("--")
        ? loadSpec(argv[0])
        : specFromFlags(argv);
    const result = render(spec);
    console.log(
      `wrote ${result.svgPath} and ${result.pngPath} ` +
        `(${result.seriesLabels.length} series, x:[${result.extents.xMin}, ` +
        `${result.extents.xMax}], y:[${result.extents.yMin}, ${result.extents.yMax}])`,
    );
    return 0;
  } catch (err) {
    if (
      err instanceof SpecError ||
      err instanceof MissingColumnError ||
      err instanceof EmptyCsvError ||
      (err as NodeJS.ErrnoException)?.code === "ENOENT"
    ) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

process.exitCode = main(process.argv.slice(2));
