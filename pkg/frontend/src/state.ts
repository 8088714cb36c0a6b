/** Interactive view state and its pure update rules. */

import type { ChartKind, LayoutPayload, SideName } from "./types.js";

export interface ViewState {
  /** Inner radii as fractions of R; used when the side's k is null. */
  rRiseFrac: number;
  rDropFrac: number;
  /** Top-k per side; non-null means the stepper drives that side. */
  kRise: number | null;
  kDrop: number | null;
  hoveredItem: string | null;
  pinnedPair: [string, string] | null;
  chartToggles: Set<ChartKind>;
}

export function initialState(): ViewState {
  return {
    rRiseFrac: 0.5,
    rDropFrac: 0.5,
    kRise: null,
    kDrop: null,
    hoveredItem: null,
    pinnedPair: null,
    chartToggles: new Set(),
  };
}

export function clampFraction(value: number): number {
  if (!Number.isFinite(value)) return 0;
  return Math.min(1, Math.max(0, value));
}

/** Slider move: fraction mode wins, the side's stepper is cleared. */
export function setRadiusFraction(
  state: ViewState,
  side: SideName,
  value: number,
): ViewState {
  const frac = clampFraction(value);
  if (side === "rise") {
    return { ...state, rRiseFrac: frac, kRise: null };
  }
  return { ...state, rDropFrac: frac, kDrop: null };
}

/** Stepper move: k mode wins for that side until the slider is touched. */
export function setTopK(
  state: ViewState,
  side: SideName,
  k: number | null,
): ViewState {
  const value = k === null ? null : Math.max(1, Math.round(k));
  if (side === "rise") {
    return { ...state, kRise: value };
  }
  return { ...state, kDrop: value };
}

export type PairValidation =
  | { ok: true; pair: [string, string] }
  | { ok: false; message: string };

export function validatePair(
  a: string,
  b: string,
  knownIds: ReadonlySet<string>,
): PairValidation {
  if (!a || !b) {
    return { ok: false, message: "pick two items to compare" };
  }
  if (a === b) {
    return { ok: false, message: "pick two different items" };
  }
  for (const id of [a, b]) {
    if (!knownIds.has(id)) {
      return { ok: false, message: `unknown item id: ${id}` };
    }
  }
  return { ok: true, pair: [a, b] };
}

export function toggleChart(state: ViewState, chart: ChartKind): ViewState {
  const charts = new Set(state.chartToggles);
  if (charts.has(chart)) {
    charts.delete(chart);
  } else {
    charts.add(chart);
  }
  return { ...state, chartToggles: charts };
}

export interface BadgeCounts {
  rise: number;
  drop: number;
}

/** Residue counts per side, read straight off the layout payload. */
export function badgeCounts(layout: LayoutPayload): BadgeCounts {
  const counts = { rise: 0, drop: 0 };
  for (const item of layout.items) {
    if (item.residue) {
      counts[item.side] += 1;
    }
  }
  return counts;
}
