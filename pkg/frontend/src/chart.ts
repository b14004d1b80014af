/**
 * Minimal self-contained SVG line charts.
 *
 * No DOM, no external plotting library: the chart is assembled as an SVG
 * string so that identical inputs yield byte-identical files.  A chart may
 * carry pulse-envelope traces drawn along the bottom of the panel, rescaled
 * to 15% of the y-range, mirroring the usual presentation of time-resolved
 * alignment figures.
 */

export interface SeriesData {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dash: string | null;
}

export interface EnvelopeTrace {
  x: number[];
  y: number[];
  color: string;
}

export interface ChartOptions {
  title?: string;
  xLabel: string;
  yLabel: string;
  series: SeriesData[];
  envelopes?: EnvelopeTrace[];
  width?: number;
  height?: number;
  legend?: boolean;
}

export interface DataExtents {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface ChartResult {
  svg: string;
  extents: DataExtents;
  width: number;
  height: number;
}

const MARGIN = { top: 34, right: 16, bottom: 46, left: 62 };
const ENVELOPE_FRACTION = 0.15;

export function dataExtents(series: SeriesData[]): DataExtents {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of series) {
    for (const v of s.x) {
      if (v < xMin) xMin = v;
      if (v > xMax) xMax = v;
    }
    for (const v of s.y) {
      if (v < yMin) yMin = v;
      if (v > yMax) yMax = v;
    }
  }
  if (!isFinite(xMin) || !isFinite(yMin)) {
    throw new Error("no data points to plot");
  }
  return { xMin, xMax, yMin, yMax };
}

/** 1-2-5 tick positions covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (hi === lo) {
    return [lo - 0.5, lo, lo + 0.5];
  }
  const span = hi - lo;
  const raw = span / target;
  const power = Math.floor(Math.log10(raw));
  const base = Math.pow(10, power);
  let step = base;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * base >= raw) {
      step = mult * base;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

const escape = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function buildChart(options: ChartOptions): ChartResult {
  const width = options.width ?? 720;
  const height = options.height ?? 430;
  const extents = dataExtents(options.series);

  // pad the y-range a little and reserve the envelope band below the data
  const ySpanRaw = extents.yMax - extents.yMin || 1;
  let yLo = extents.yMin - 0.05 * ySpanRaw;
  const yHi = extents.yMax + 0.05 * ySpanRaw;
  const hasEnvelope = (options.envelopes ?? []).length > 0;
  if (hasEnvelope) {
    yLo -= ENVELOPE_FRACTION * (yHi - yLo);
  }
  const xLo = extents.xMin;
  const xHi = extents.xMax === extents.xMin ? extents.xMin + 1 : extents.xMax;

  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) => MARGIN.top + (1 - (y - yLo) / (yHi - yLo)) * plotH;
  const fmt = (v: number) => v.toFixed(2);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // frame
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333" stroke-width="1"/>`,
  );

  // ticks and grid
  for (const tick of niceTicks(xLo, xHi)) {
    const px = sx(tick);
    if (px < MARGIN.left - 1e-6 || px > MARGIN.left + plotW + 1e-6) continue;
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(MARGIN.top + plotH)}" x2="${fmt(px)}" ` +
        `y2="${fmt(MARGIN.top + plotH + 5)}" stroke="#333" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(MARGIN.top + plotH + 18)}" font-size="11" ` +
        `text-anchor="middle" fill="#333">${formatTick(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const py = sy(tick);
    if (py < MARGIN.top - 1e-6 || py > MARGIN.top + plotH + 1e-6) continue;
    parts.push(
      `<line x1="${fmt(MARGIN.left - 5)}" y1="${fmt(py)}" x2="${fmt(MARGIN.left)}" ` +
        `y2="${fmt(py)}" stroke="#333" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(MARGIN.left - 8)}" y="${fmt(py + 3.5)}" font-size="11" ` +
        `text-anchor="end" fill="#333">${formatTick(tick)}</text>`,
    );
  }

  // axis labels and title
  parts.push(
    `<text x="${fmt(MARGIN.left + plotW / 2)}" y="${fmt(height - 10)}" ` +
      `font-size="13" text-anchor="middle" fill="#111">${escape(options.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${fmt(MARGIN.top + plotH / 2)}" font-size="13" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt(MARGIN.top + plotH / 2)})" fill="#111">` +
      `${escape(options.yLabel)}</text>`,
  );
  if (options.title) {
    parts.push(
      `<text x="${fmt(MARGIN.left + plotW / 2)}" y="20" font-size="14" ` +
        `text-anchor="middle" fill="#111">${escape(options.title)}</text>`,
    );
  }

  const polyline = (
    xs: number[],
    ys: number[],
    color: string,
    dash: string | null,
    widthPx: number,
  ) => {
    const points = xs
      .map((x, i) => `${fmt(sx(x))},${fmt(sy(ys[i]))}`)
      .join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    return (
      `<polyline points="${points}" fill="none" stroke="${color}" ` +
      `stroke-width="${widthPx}"${dashAttr}/>`
    );
  };

  // envelope band along the bottom, scaled to 15% of the panel's y-range
  if (hasEnvelope) {
    const bandTop = yLo + ENVELOPE_FRACTION * (yHi - yLo);
    for (const envelope of options.envelopes!) {
      const peak = Math.max(...envelope.y, 0);
      if (peak <= 0) continue;
      const scaled = envelope.y.map(
        (v) => yLo + (v / peak) * (bandTop - yLo),
      );
      parts.push(polyline(envelope.x, scaled, envelope.color, null, 0.9));
    }
  }

  for (const s of options.series) {
    parts.push(polyline(s.x, s.y, s.color, s.dash, 1.4));
    if (s.x.length === 1) {
      // degenerate single-point series still renders visibly
      parts.push(
        `<circle cx="${fmt(sx(s.x[0]))}" cy="${fmt(sy(s.y[0]))}" r="3" ` +
          `fill="${s.color}"/>`,
      );
    }
  }

  if (options.legend !== false && options.series.length > 1) {
    const x0 = MARGIN.left + plotW - 150;
    let y0 = MARGIN.top + 14;
    for (const s of options.series) {
      const dashAttr = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      parts.push(
        `<line x1="${fmt(x0)}" y1="${fmt(y0 - 4)}" x2="${fmt(x0 + 28)}" ` +
          `y2="${fmt(y0 - 4)}" stroke="${s.color}" stroke-width="1.6"${dashAttr}/>`,
      );
      parts.push(
        `<text x="${fmt(x0 + 34)}" y="${fmt(y0)}" font-size="11" fill="#111">` +
          `${escape(s.label)}</text>`,
      );
      y0 += 16;
    }
  }

  parts.push("</svg>");
  return { svg: parts.join("\n"), extents, width, height };
}
