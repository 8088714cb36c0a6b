/** Typed client for the layout service endpoints. */

import type {
  ChartKind,
  ComparisonReport,
  DatasetPayload,
  LayoutPayload,
} from "./types.js";
import type { ViewState } from "./state.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/** Radius query for the current state: per side, the stepper's k when set,
 * otherwise the slider fraction. */
export function radiusQuery(state: ViewState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.kRise !== null) {
    params.set("kRise", String(state.kRise));
  } else {
    params.set("rRiseFrac", String(state.rRiseFrac));
  }
  if (state.kDrop !== null) {
    params.set("kDrop", String(state.kDrop));
  } else {
    params.set("rDropFrac", String(state.rDropFrac));
  }
  return params;
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const doc = await resp.json();
    if (doc && typeof doc.error === "string") return doc.error;
  } catch {
    // fall through to the generic message
  }
  return `service error (${resp.status})`;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async getJson<T>(path: string, signal?: AbortSignal): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, { signal });
    if (!resp.ok) {
      throw new ApiError(await errorMessage(resp), resp.status);
    }
    return (await resp.json()) as T;
  }

  layout(params: URLSearchParams, signal?: AbortSignal): Promise<LayoutPayload> {
    return this.getJson(`/api/layout?${params.toString()}`, signal);
  }

  metrics(
    a: string,
    b: string,
    params: URLSearchParams,
    signal?: AbortSignal,
  ): Promise<ComparisonReport> {
    const query = new URLSearchParams(params);
    query.set("a", a);
    query.set("b", b);
    return this.getJson(`/api/metrics?${query.toString()}`, signal);
  }

  dataset(signal?: AbortSignal): Promise<DatasetPayload> {
    return this.getJson("/api/dataset", signal);
  }

  renderUrl(chart: ChartKind, params: URLSearchParams): string {
    const query = new URLSearchParams(params);
    query.set("chart", chart);
    return `${this.baseUrl}/api/render.svg?${query.toString()}`;
  }
}
