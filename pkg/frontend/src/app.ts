/** Headless viewer core: state, debounced service sync, display models.
 *
 * The DOM layer in main.ts only mirrors snapshots produced here, which is
 * what makes the service contract testable without a browser.
 */

import { ApiClient, radiusQuery } from "./api.js";
import { buildPanelModel, type PanelModel } from "./panel.js";
import { buildSceneModel, type SceneModel } from "./scene.js";
import {
  badgeCounts,
  initialState,
  setRadiusFraction,
  setTopK,
  toggleChart,
  validatePair,
  type BadgeCounts,
  type ViewState,
} from "./state.js";
import type {
  ChartKind,
  DatasetItemPayload,
  LayoutPayload,
  SideName,
} from "./types.js";

export interface TooltipModel {
  id: string;
  label: string;
  initial: number;
  final: number;
  delta: number;
  /** Pre-transform values, present when a rank transform is active. */
  sourceInitial: number | null;
  sourceFinal: number | null;
}

export interface Snapshot {
  state: ViewState;
  layout: LayoutPayload | null;
  scene: SceneModel | null;
  badges: BadgeCounts | null;
  panel: PanelModel | null;
  pinMessage: string | null;
  banner: string | null;
  tooltip: TooltipModel | null;
  chartUrls: Array<{ chart: ChartKind; url: string }>;
}

type Listener = (snapshot: Snapshot) => void;

export class ViewerApp {
  private state: ViewState = initialState();
  private layout: LayoutPayload | null = null;
  private scene: SceneModel | null = null;
  private badges: BadgeCounts | null = null;
  private panel: PanelModel | null = null;
  private pinMessage: string | null = null;
  private banner: string | null = null;
  private originals = new Map<string, DatasetItemPayload>();
  private datasetTransform = "identity";

  private readonly debounceMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private inflight: Promise<void> | null = null;
  private listeners: Listener[] = [];

  constructor(
    private readonly api: ApiClient,
    options: { debounceMs?: number } = {},
  ) {
    this.debounceMs = options.debounceMs ?? 120;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  getSnapshot(): Snapshot {
    const params = radiusQuery(this.state);
    return {
      state: this.state,
      layout: this.layout,
      scene: this.scene,
      badges: this.badges,
      panel: this.panel,
      pinMessage: this.pinMessage,
      banner: this.banner,
      tooltip: this.buildTooltip(),
      chartUrls: [...this.state.chartToggles].sort().map((chart) => ({
        chart,
        url: this.api.renderUrl(chart, params),
      })),
    };
  }

  private emit(): void {
    const snapshot = this.getSnapshot();
    for (const listener of this.listeners) {
      listener(snapshot);
    }
  }

  /** Load dataset context (original values for tooltips) and first scene. */
  async init(): Promise<void> {
    try {
      const payload = await this.api.dataset();
      this.datasetTransform = payload.dataset.transform;
      this.originals = new Map(
        payload.dataset.items.map((item) => [item.id, item]),
      );
    } catch {
      this.originals = new Map();
    }
    await this.syncNow();
  }

  setRadiusFraction(side: SideName, value: number): void {
    this.state = setRadiusFraction(this.state, side, value);
    this.scheduleSync();
  }

  setTopK(side: SideName, k: number | null): void {
    this.state = setTopK(this.state, side, k);
    this.scheduleSync();
  }

  toggleChart(chart: ChartKind): void {
    this.state = toggleChart(this.state, chart);
    this.emit();
  }

  hover(id: string | null): void {
    this.state = { ...this.state, hoveredItem: id };
    this.emit();
  }

  pin(a: string, b: string): void {
    const known = new Set((this.layout?.items ?? []).map((item) => item.id));
    const result = validatePair(a, b, known);
    if (!result.ok) {
      this.pinMessage = result.message;
      this.emit();
      return;
    }
    this.state = { ...this.state, pinnedPair: result.pair };
    this.pinMessage = null;
    this.scheduleSync();
  }

  unpin(): void {
    this.state = { ...this.state, pinnedPair: null };
    this.panel = null;
    this.pinMessage = null;
    this.emit();
  }

  private buildTooltip(): TooltipModel | null {
    const id = this.state.hoveredItem;
    if (id === null || this.layout === null) return null;
    const item = this.layout.items.find((it) => it.id === id);
    if (!item) return null;
    const ranked = this.datasetTransform !== "identity";
    const source = ranked ? this.originals.get(id) : undefined;
    return {
      id: item.id,
      label: item.label,
      initial: item.initial,
      final: item.final,
      delta: item.delta,
      sourceInitial: source ? source.initial : null,
      sourceFinal: source ? source.final : null,
    };
  }

  private scheduleSync(): void {
    this.emit(); // controls reflect the new state immediately
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.syncNow();
    }, this.debounceMs);
  }

  /** Fetch the scene (and pinned metrics) for the current state. Supersedes
   * any in-flight request; stale responses are dropped via AbortController.
   */
  async syncNow(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const params = radiusQuery(this.state);
    const pinned = this.state.pinnedPair;

    const run = (async () => {
      try {
        const layout = await this.api.layout(params, controller.signal);
        let panel: PanelModel | null = null;
        if (pinned) {
          const report = await this.api.metrics(
            pinned[0], pinned[1], params, controller.signal,
          );
          panel = buildPanelModel(report);
        }
        if (controller.signal.aborted) return;
        this.layout = layout;
        this.scene = buildSceneModel(layout);
        this.badges = badgeCounts(layout);
        this.panel = panel;
        this.banner = null;
      } catch (err) {
        if (controller.signal.aborted) return;
        // keep the last good scene; surface a non-blocking banner
        this.banner = "layout service unreachable";
        void err;
      } finally {
        if (!controller.signal.aborted) {
          this.emit();
        }
      }
    })();
    this.inflight = run;
    await run;
  }

  /** Test helper: run any pending debounce immediately and wait for it. */
  async flush(): Promise<void> {
    if (this.timer !== null) {
      await this.syncNow();
    } else if (this.inflight) {
      await this.inflight;
    }
  }
}
