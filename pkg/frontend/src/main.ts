/** DOM wiring: binds a ViewerApp to the controls in index.html. */

import { ApiClient } from "./api.js";
import { ViewerApp, type Snapshot } from "./app.js";
import type { LineSpec, SceneModel } from "./scene.js";
import type { ChartKind } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CHARTS: ChartKind[] = ["slope", "grouped-bar", "stacked-bar"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function svgLine(spec: LineSpec, cls: string, dataId?: string): SVGLineElement {
  const line = document.createElementNS(SVG_NS, "line");
  line.setAttribute("x1", String(spec.x1));
  line.setAttribute("y1", String(spec.y1));
  line.setAttribute("x2", String(spec.x2));
  line.setAttribute("y2", String(spec.y2));
  line.setAttribute("stroke", spec.stroke);
  line.setAttribute("stroke-width", String(spec.width));
  line.setAttribute("stroke-linecap", "round");
  line.setAttribute("class", cls);
  if (dataId !== undefined) {
    line.dataset.id = dataId;
  }
  return line;
}

function drawScene(svg: SVGSVGElement, model: SceneModel, app: ViewerApp): void {
  svg.replaceChildren();
  svg.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);
  for (const arc of model.axes) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("d", arc.d);
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", arc.stroke);
    svg.appendChild(path);
  }
  svg.appendChild(svgLine(model.separator, "separator"));
  for (const mark of model.tickMarks) {
    svg.appendChild(svgLine(mark, "tick"));
  }
  for (const label of model.tickLabels) {
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(label.x));
    text.setAttribute("y", String(label.y));
    text.setAttribute("text-anchor", label.anchor);
    text.setAttribute("dominant-baseline", "middle");
    text.setAttribute("class", "tick-label");
    text.textContent = label.text;
    svg.appendChild(text);
  }
  let pendingPin: string | null = null;
  for (const item of model.items) {
    const base = svgLine(item.base, "item", item.id);
    base.addEventListener("mouseenter", () => app.hover(item.id));
    base.addEventListener("mouseleave", () => app.hover(null));
    base.addEventListener("click", () => {
      // first click chooses A, second click B
      if (pendingPin === null) {
        pendingPin = item.id;
        el<HTMLInputElement>("pin-a").value = item.id;
      } else {
        el<HTMLInputElement>("pin-b").value = item.id;
        app.pin(pendingPin, item.id);
        pendingPin = null;
      }
    });
    svg.appendChild(base);
    if (item.bold) {
      svg.appendChild(svgLine(item.bold, "intercepted", item.id));
    }
  }
}

function render(snapshot: Snapshot, app: ViewerApp): void {
  const scene = snapshot.scene;
  if (scene) {
    drawScene(el<HTMLElement>("scene") as unknown as SVGSVGElement, scene, app);
  }
  el<HTMLSpanElement>("badge-rise").textContent =
    snapshot.badges ? String(snapshot.badges.rise) : "-";
  el<HTMLSpanElement>("badge-drop").textContent =
    snapshot.badges ? String(snapshot.badges.drop) : "-";

  const banner = el<HTMLDivElement>("banner");
  banner.textContent = snapshot.banner ?? "";
  banner.style.display = snapshot.banner ? "block" : "none";

  const pinMessage = el<HTMLDivElement>("pin-message");
  pinMessage.textContent = snapshot.pinMessage ?? "";

  const panel = el<HTMLDivElement>("panel");
  panel.replaceChildren();
  if (snapshot.panel) {
    const heading = document.createElement("h3");
    heading.textContent = `${snapshot.panel.itemA} vs ${snapshot.panel.itemB}`;
    panel.appendChild(heading);
    for (const row of snapshot.panel.rows) {
      const div = document.createElement("div");
      div.className = "panel-row";
      div.textContent = `${row.label}: ${row.text}`;
      panel.appendChild(div);
    }
  }

  const tooltip = el<HTMLDivElement>("tooltip");
  if (snapshot.tooltip) {
    const t = snapshot.tooltip;
    const source =
      t.sourceInitial !== null && t.sourceFinal !== null
        ? ` (values ${t.sourceInitial} to ${t.sourceFinal})`
        : "";
    tooltip.textContent =
      `${t.label}: ${t.initial} to ${t.final}, change ${t.delta}${source}`;
    tooltip.style.display = "block";
  } else {
    tooltip.style.display = "none";
  }

  // slider positions follow the layout when a stepper drives the side
  if (snapshot.layout) {
    const cfg = snapshot.layout.config;
    if (snapshot.state.kRise !== null) {
      el<HTMLInputElement>("slider-rise").value = String(cfg.rRise / cfg.R);
    }
    if (snapshot.state.kDrop !== null) {
      el<HTMLInputElement>("slider-drop").value = String(cfg.rDrop / cfg.R);
    }
  }

  const chartsHost = el<HTMLDivElement>("charts");
  chartsHost.replaceChildren();
  for (const entry of snapshot.chartUrls) {
    const img = document.createElement("img");
    img.src = entry.url;
    img.alt = entry.chart;
    img.className = "chart";
    chartsHost.appendChild(img);
  }
}

function bindControls(app: ViewerApp): void {
  el<HTMLInputElement>("slider-rise").addEventListener("input", (event) => {
    app.setRadiusFraction("rise", Number((event.target as HTMLInputElement).value));
  });
  el<HTMLInputElement>("slider-drop").addEventListener("input", (event) => {
    app.setRadiusFraction("drop", Number((event.target as HTMLInputElement).value));
  });
  el<HTMLInputElement>("k-rise").addEventListener("change", (event) => {
    const raw = (event.target as HTMLInputElement).value;
    app.setTopK("rise", raw === "" ? null : Number(raw));
  });
  el<HTMLInputElement>("k-drop").addEventListener("change", (event) => {
    const raw = (event.target as HTMLInputElement).value;
    app.setTopK("drop", raw === "" ? null : Number(raw));
  });
  el<HTMLButtonElement>("pin-button").addEventListener("click", () => {
    app.pin(el<HTMLInputElement>("pin-a").value.trim(),
            el<HTMLInputElement>("pin-b").value.trim());
  });
  el<HTMLButtonElement>("unpin-button").addEventListener("click", () => app.unpin());
  for (const chart of CHARTS) {
    el<HTMLInputElement>(`toggle-${chart}`).addEventListener("change", () => {
      app.toggleChart(chart);
    });
  }
}

export function bootstrap(): void {
  const api = new ApiClient("");
  const app = new ViewerApp(api);
  app.subscribe((snapshot) => render(snapshot, app));
  bindControls(app);
  void app.init();
}

if (typeof document !== "undefined" && document.getElementById("scene")) {
  bootstrap();
}
