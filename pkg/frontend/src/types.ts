/** Wire types for the layout service. The viewer computes no geometry of
 * its own: everything it draws or prints comes from these payloads. */

export type SideName = "rise" | "drop";

export interface ScalePayload {
  vmin: number;
  vmax: number;
  span: number;
}

export interface ConfigPayload {
  R: number;
  rRise: number;
  rDrop: number;
  span: number;
  canvasWidth: number;
  canvasHeight: number;
  tickCount: number;
  riseColor: string;
  dropColor: string;
  residueHighlightColor: string;
  labelPolicy: string;
  transform: string;
  invertImprovement: boolean;
  warnings: string[];
}

export type Point = [number, number];

export interface TickPayload {
  value: number;
  label: string;
  inner: Point;
  outer: Point;
}

export interface ItemPayload {
  id: string;
  label: string;
  side: SideName;
  initial: number;
  final: number;
  delta: number;
  theta: number;
  phiInitial: number;
  phiFinal: number;
  A: Point;
  B: Point;
  P: Point;
  chord: number;
  intercepted: number;
  residue: boolean;
}

export interface LayoutPayload {
  scale: ScalePayload;
  config: ConfigPayload;
  separator: { M: Point; N: Point };
  ticks: TickPayload[];
  items: ItemPayload[];
}

export interface ComparisonReport {
  itemA: string;
  itemB: string;
  rawPct: number;
  slopePct: number;
  barDiffPct: number;
  interceptedPct: number;
  radius: number;
}

export interface DatasetItemPayload {
  id: string;
  label?: string;
  initial: number;
  final: number;
}

export interface DatasetPayload {
  version: number;
  dataset: {
    items: DatasetItemPayload[];
    transform: string;
    invertImprovement: boolean;
  };
}

export type ChartKind = "slope" | "grouped-bar" | "stacked-bar";
