import { describe, expect, it } from "vitest";

import {
  badgeCounts,
  clampFraction,
  initialState,
  setRadiusFraction,
  setTopK,
  toggleChart,
  validatePair,
} from "../src/state.js";
import fixture from "./fixtures/layout_small.json";
import type { LayoutPayload } from "../src/types.js";

const layout = fixture as unknown as LayoutPayload;

describe("fractions", () => {
  it("clamps to [0, 1]", () => {
    expect(clampFraction(-0.5)).toBe(0);
    expect(clampFraction(1.5)).toBe(1);
    expect(clampFraction(0.25)).toBe(0.25);
    expect(clampFraction(Number.NaN)).toBe(0);
  });
});

describe("mode exclusivity per side", () => {
  it("slider clears the side's stepper", () => {
    let state = setTopK(initialState(), "rise", 10);
    expect(state.kRise).toBe(10);
    state = setRadiusFraction(state, "rise", 0.8);
    expect(state.kRise).toBeNull();
    expect(state.rRiseFrac).toBe(0.8);
  });

  it("sides are independent", () => {
    let state = setTopK(initialState(), "rise", 10);
    state = setTopK(state, "drop", 5);
    state = setRadiusFraction(state, "rise", 0.3);
    expect(state.kRise).toBeNull();
    expect(state.kDrop).toBe(5);
  });

  it("stepper values are positive integers", () => {
    const state = setTopK(initialState(), "drop", 2.6);
    expect(state.kDrop).toBe(3);
    expect(setTopK(state, "drop", -4).kDrop).toBe(1);
  });
});

describe("pair validation", () => {
  const known = new Set(["a", "b", "c"]);

  it("accepts two distinct known ids", () => {
    expect(validatePair("a", "b", known)).toEqual({ ok: true, pair: ["a", "b"] });
  });

  it("rejects identical ids", () => {
    const result = validatePair("a", "a", known);
    expect(result.ok).toBe(false);
  });

  it("rejects unknown ids with the id in the message", () => {
    const result = validatePair("a", "zz", known);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.message).toContain("zz");
  });

  it("rejects empty input", () => {
    expect(validatePair("", "b", known).ok).toBe(false);
  });
});

describe("chart toggles", () => {
  it("flips set membership", () => {
    let state = toggleChart(initialState(), "slope");
    expect(state.chartToggles.has("slope")).toBe(true);
    state = toggleChart(state, "slope");
    expect(state.chartToggles.has("slope")).toBe(false);
  });
});

describe("badges", () => {
  it("counts residue flags per side from the payload", () => {
    expect(badgeCounts(layout)).toEqual({ rise: 1, drop: 1 });
  });
});
