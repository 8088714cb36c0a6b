/** Display model for the pinned-pair comparison panel.
 *
 * Each row keeps the raw service value next to its formatted text, so the
 * contract "every displayed number equals the metrics response" is checkable
 * on the raw field.
 */

import type { ComparisonReport } from "./types.js";

export interface PanelRow {
  key: keyof ComparisonReport;
  label: string;
  raw: number;
  text: string;
}

export interface PanelModel {
  itemA: string;
  itemB: string;
  rows: PanelRow[];
}

export function formatPct(value: number): string {
  return `${value.toFixed(1)}%`;
}

export function buildPanelModel(report: ComparisonReport): PanelModel {
  const pctRow = (key: keyof ComparisonReport, label: string): PanelRow => ({
    key,
    label,
    raw: report[key] as number,
    text: formatPct(report[key] as number),
  });
  return {
    itemA: report.itemA,
    itemB: report.itemB,
    rows: [
      pctRow("rawPct", "raw |change|"),
      pctRow("slopePct", "slope encoding"),
      pctRow("barDiffPct", "bar-height encoding"),
      pctRow("interceptedPct", "intercepted lengths"),
      {
        key: "radius",
        label: "inner radius",
        raw: report.radius,
        text: report.radius.toFixed(1),
      },
    ],
  };
}
