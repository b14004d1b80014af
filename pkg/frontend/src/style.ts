/**
 * Line styling conventions.
 *
 * Temperatures map to line styles by value (solid, dashed, dash-dotted,
 * dotted for the canonical 1/10/20/30 K set), never by column or file
 * order, so reordering inputs cannot silently swap curves.  Sweep figures
 * showing positive and negative orientation use solid vs dashed.
 */

export interface LineStyle {
  /** SVG stroke-dasharray, or null for a solid line */
  dash: string | null;
  color: string;
}

const DASH_SEQUENCE: (string | null)[] = [
  null,        // solid
  "6,3",       // dashed
  "7,2,1.5,2", // dash-dotted
  "1.5,2.5",   // dotted
];

const COLOR_SEQUENCE = ["#1a1a1a", "#c0392b", "#2471a3", "#1e8449"];

/** Fixed assignments for the canonical temperature set. */
const TEMPERATURE_SLOTS = new Map<number, number>([
  [1, 0],
  [10, 1],
  [20, 2],
  [30, 3],
]);

export function styleForTemperature(temperature: number): LineStyle {
  const slot = TEMPERATURE_SLOTS.get(temperature);
  const index =
    slot !== undefined
      ? slot
      : Math.abs(Math.round(temperature)) % DASH_SEQUENCE.length;
  return { dash: DASH_SEQUENCE[index], color: COLOR_SEQUENCE[index] };
}

/** Solid for the positive branch, dashed for the negative one. */
export function styleForOrientationBranch(column: string): LineStyle {
  const negative = column.includes("neg");
  return { dash: negative ? "6,3" : null, color: "#1a1a1a" };
}

export function styleForSlot(index: number): LineStyle {
  const i = index % DASH_SEQUENCE.length;
  return { dash: DASH_SEQUENCE[i], color: COLOR_SEQUENCE[i] };
}
