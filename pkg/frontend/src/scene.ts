/** Pure display model for the radial scene.
 *
 * Every coordinate here is a payload coordinate pushed through one affine
 * screen transform (center + y flip); arcs reuse the payload's tick
 * endpoints and radii. No angles or lengths are computed client-side.
 */

import type { ItemPayload, LayoutPayload, Point, TickPayload } from "./types.js";

const FLAT_COLOR = "#888888";
const AXIS_COLOR = "#666666";
const TICK_EXTENSION = 6;
const LABEL_GAP = 12;

export interface LineSpec {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  width: number;
}

export interface TextSpec {
  x: number;
  y: number;
  text: string;
  anchor: "start" | "middle" | "end";
}

export interface ArcSpec {
  d: string;
  stroke: string;
}

export interface SceneItem {
  id: string;
  label: string;
  base: LineSpec;
  bold: LineSpec | null;
  residue: boolean;
}

export interface SceneModel {
  width: number;
  height: number;
  axes: ArcSpec[];
  separator: LineSpec;
  tickMarks: LineSpec[];
  tickLabels: TextSpec[];
  items: SceneItem[];
}

type Transform = (p: Point) => Point;

function screenTransform(layout: LayoutPayload): Transform {
  const cx = layout.config.canvasWidth / 2;
  const cy = layout.config.canvasHeight / 2;
  return ([x, y]) => [cx + x, cy - y];
}

function itemColor(item: ItemPayload, layout: LayoutPayload): string {
  if (item.delta === 0) return FLAT_COLOR;
  return item.side === "rise" ? layout.config.riseColor : layout.config.dropColor;
}

function arcPath(from: Point, to: Point, radius: number, sweep: 0 | 1): string {
  return (
    `M ${from[0]} ${from[1]} ` +
    `A ${radius} ${radius} 0 0 ${sweep} ${to[0]} ${to[1]}`
  );
}

/** Scale a payload point radially by (radius + gap) / radius. */
function pushOut(p: Point, radius: number, gap: number): Point {
  const f = (radius + gap) / radius;
  return [p[0] * f, p[1] * f];
}

function anchorFor(x: number, cx: number): "start" | "middle" | "end" {
  if (Math.abs(x - cx) < 1e-9) return "middle";
  return x > cx ? "start" : "end";
}

export function buildSceneModel(layout: LayoutPayload): SceneModel {
  const t = screenTransform(layout);
  const cfg = layout.config;
  const cx = cfg.canvasWidth / 2;

  // ticks are emitted per side: first the rise semicircle, then the drop
  const half = layout.ticks.length / 2;
  const sides: Array<{ ticks: TickPayload[]; inner: number; sweep: 0 | 1 }> = [
    { ticks: layout.ticks.slice(0, half), inner: cfg.rRise, sweep: 0 },
    { ticks: layout.ticks.slice(half), inner: cfg.rDrop, sweep: 1 },
  ];

  const axes: ArcSpec[] = [];
  const tickMarks: LineSpec[] = [];
  const tickLabels: TextSpec[] = [];
  for (const side of sides) {
    if (side.ticks.length < 2) continue;
    const first = side.ticks[0];
    const last = side.ticks[side.ticks.length - 1];
    axes.push({
      d: arcPath(t(first.outer), t(last.outer), cfg.R, side.sweep),
      stroke: AXIS_COLOR,
    });
    if (side.inner > 0) {
      axes.push({
        d: arcPath(t(first.inner), t(last.inner), side.inner, side.sweep),
        stroke: AXIS_COLOR,
      });
    }
    for (const tick of side.ticks) {
      const [mx, my] = t(tick.outer);
      const [ex, ey] = t(pushOut(tick.outer, cfg.R, TICK_EXTENSION));
      tickMarks.push({ x1: mx, y1: my, x2: ex, y2: ey, stroke: AXIS_COLOR, width: 1 });
      const [lx, ly] = t(pushOut(tick.outer, cfg.R, LABEL_GAP));
      tickLabels.push({ x: lx, y: ly, text: tick.label, anchor: anchorFor(lx, cx) });
    }
  }

  const [m1, m2] = [t(layout.separator.M), t(layout.separator.N)];
  const separator: LineSpec = {
    x1: m1[0], y1: m1[1], x2: m2[0], y2: m2[1],
    stroke: AXIS_COLOR, width: 1,
  };

  const items: SceneItem[] = layout.items.map((item) => {
    const color = itemColor(item, layout);
    const [ax, ay] = t(item.A);
    const [bx, by] = t(item.B);
    const base: LineSpec = {
      x1: ax, y1: ay, x2: bx, y2: by, stroke: color, width: 1.5,
    };
    let bold: LineSpec | null = null;
    if (item.residue) {
      const [px, py] = t(item.P);
      bold = {
        x1: ax, y1: ay, x2: px, y2: py,
        stroke: cfg.residueHighlightColor || color,
        width: 4,
      };
    }
    return { id: item.id, label: item.label, base, bold, residue: item.residue };
  });

  return {
    width: cfg.canvasWidth,
    height: cfg.canvasHeight,
    axes,
    separator,
    tickMarks,
    tickLabels,
    items,
  };
}
