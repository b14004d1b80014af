/**
 * Turn a plot spec into SVG + PNG files.
 *
 * Strictly a consumer of the simulator's CSV contract: nothing is
 * recomputed beyond presentation-level transforms (the virtual
 * "abs_orient_after" sweep column is the pointwise larger magnitude of the
 * positive and negative orientation extrema).
 */

import { writeFileSync } from "node:fs";
import { Resvg } from "@resvg/resvg-js";

import {
  buildChart,
  ChartResult,
  EnvelopeTrace,
  SeriesData,
} from "./chart.js";
import { CsvTable, numericColumn, parseCsv, temperatureFromComments } from "./csv.js";
import { PlotSpec } from "./spec.js";
import {
  styleForOrientationBranch,
  styleForSlot,
  styleForTemperature,
} from "./style.js";

export interface RenderResult {
  svgPath: string;
  pngPath: string;
  extents: { xMin: number; xMax: number; yMin: number; yMax: number };
  width: number;
  height: number;
  seriesLabels: string[];
}

interface LabelledTable {
  table: CsvTable;
  temperature: number | undefined;
  label: string;
}

function loadInputs(spec: PlotSpec): LabelledTable[] {
  return spec.inputs.map((input, index) => {
    const table = parseCsv(input.path);
    const temperature = input.temperature ?? temperatureFromComments(table);
    const label =
      input.label ??
      (temperature !== undefined ? `${temperature} K` : `series ${index + 1}`);
    return { table, temperature, label };
  });
}

function styleFor(entry: LabelledTable, index: number) {
  return entry.temperature !== undefined
    ? styleForTemperature(entry.temperature)
    : styleForSlot(index);
}

function timeseriesData(spec: PlotSpec): {
  series: SeriesData[];
  envelopes: EnvelopeTrace[];
} {
  const quantity = spec.series ?? "alignment";
  const inputs = loadInputs(spec);
  const series = inputs.map((entry, index) => {
    const style = styleFor(entry, index);
    return {
      label: entry.label,
      x: numericColumn(entry.table, "time_ps"),
      y: numericColumn(entry.table, quantity),
      color: style.color,
      dash: style.dash,
    };
  });
  // all inputs of one figure share the pulse shape: draw the first file's
  // envelopes (fundamental black, second envelope grey) along the bottom
  const first = inputs[0].table;
  const t = numericColumn(first, "time_ps");
  const envelopes: EnvelopeTrace[] = [];
  for (const [column, color] of [
    ["envelope_1", "#000000"],
    ["envelope_2", "#999999"],
  ] as const) {
    if (first.cells.has(column)) {
      const y = numericColumn(first, column);
      if (y.some((v) => v > 0)) envelopes.push({ x: t, y, color });
    }
  }
  return { series, envelopes };
}

function sweepColumn(table: CsvTable, column: string): number[] {
  if (column === "abs_orient_after") {
    const pos = numericColumn(table, "max_orient_pos_after");
    const neg = numericColumn(table, "max_orient_neg_after");
    return pos.map((p, i) => Math.max(p, -neg[i]));
  }
  return numericColumn(table, column);
}

function sweepData(spec: PlotSpec): SeriesData[] {
  const columns = spec.columns ?? ["abs_orient_after"];
  const inputs = loadInputs(spec);
  const series: SeriesData[] = [];
  for (const [index, entry] of inputs.entries()) {
    const x = numericColumn(entry.table, "param");
    for (const column of columns) {
      // single input: distinguish columns (positive solid, negative
      // dashed); multiple inputs: distinguish temperatures
      const style =
        inputs.length === 1 && columns.length > 1
          ? styleForOrientationBranch(column)
          : styleFor(entry, index);
      const label =
        inputs.length === 1 && columns.length > 1 ? column : entry.label;
      series.push({
        label,
        x,
        y: sweepColumn(entry.table, column),
        color: style.color,
        dash: style.dash,
      });
    }
  }
  return series;
}

export function renderChart(spec: PlotSpec): ChartResult {
  if (spec.kind === "timeseries") {
    const { series, envelopes } = timeseriesData(spec);
    return buildChart({
      title: spec.title,
      xLabel: spec.xLabel ?? "time (ps)",
      yLabel: spec.yLabel ?? (spec.series === "orientation"
        ? "orientation <cos θ>"
        : "alignment <cos² θ>"),
      series,
      envelopes,
      width: spec.width,
      height: spec.height,
    });
  }
  return buildChart({
    title: spec.title,
    xLabel: spec.xLabel ?? "parameter",
    yLabel: spec.yLabel ?? "extremum",
    series: sweepData(spec),
    width: spec.width,
    height: spec.height,
  });
}

export function render(spec: PlotSpec): RenderResult {
  const chart = renderChart(spec);
  const svgPath = spec.output;
  const pngPath = svgPath.replace(/\.svg$/, ".png");
  writeFileSync(svgPath, chart.svg);
  const png = new Resvg(chart.svg, {
    fitTo: { mode: "width", value: chart.width * 2 },
  }).render();
  writeFileSync(pngPath, png.asPng());
  const labels =
    spec.kind === "timeseries"
      ? timeseriesData(spec).series.map((s) => s.label)
      : sweepData(spec).map((s) => s.label);
  return {
    svgPath,
    pngPath,
    extents: chart.extents,
    width: chart.width,
    height: chart.height,
    seriesLabels: labels,
  };
}
