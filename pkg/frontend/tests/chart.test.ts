import { describe, expect, it } from "vitest";

import type { AdaptResponse, FrontResponse } from "../src/api.js";
import { ObjectiveScatter } from "../src/chart.js";
import { RAD_TO_DEG } from "../src/units.js";
import { fixture } from "./helpers.js";

const front1 = fixture.front1 as FrontResponse;
const front2 = fixture.front2 as FrontResponse;
const adapt1 = fixture.adapt1 as AdaptResponse;
const adapt2 = fixture.adapt2 as AdaptResponse;

function renderScatter(front: FrontResponse, latest: AdaptResponse) {
  const root = document.createElement("div");
  const selections: string[] = [];
  new ObjectiveScatter(root, (id) => selections.push(id)).render(front, latest);
  return { root, selections };
}

describe("objective scatter", () => {
  it("draws base markers for every front point and emphasized candidates", () => {
    const { root } = renderScatter(front1, adapt1);
    expect(root.querySelectorAll(".front-point").length).toBe(front1.candidates.length);
    expect(root.querySelectorAll(".candidate").length).toBe(adapt1.candidates.length);
    expect(root.querySelectorAll(".auto-pick").length).toBe(1);
  });

  it("plots front points at exactly payload * 180/pi degrees", () => {
    const { root } = renderScatter(front1, adapt1);
    const markers = root.querySelectorAll(".front-point");
    front1.candidates.forEach((candidate, index) => {
      const marker = markers[index];
      expect(Number(marker.getAttribute("data-neck-deg"))).toBe(
        candidate.objectives[0] * RAD_TO_DEG
      );
      expect(Number(marker.getAttribute("data-arm-deg"))).toBe(
        candidate.objectives[1] * RAD_TO_DEG
      );
    });
  });

  it("plots reduced candidates at exactly the service's degree values", () => {
    const { root } = renderScatter(front1, adapt1);
    const markers = root.querySelectorAll(".candidate");
    adapt1.candidates.forEach((candidate, index) => {
      const marker = markers[index];
      expect(Number(marker.getAttribute("data-neck-deg"))).toBe(
        candidate.objectives_degrees.neck_angle
      );
      expect(Number(marker.getAttribute("data-arm-deg"))).toBe(
        candidate.objectives_degrees.arm_angle
      );
      // Degrees in the payload are the radian values unit-converted.
      expect(candidate.objectives_degrees.neck_angle).toBe(
        candidate.objectives.neck_angle * RAD_TO_DEG
      );
    });
  });

  it("clicking a candidate reports its id for selection", () => {
    const { root, selections } = renderScatter(front1, adapt1);
    const marker = root.querySelector<SVGElement>(".candidate")!;
    marker.dispatchEvent(new MouseEvent("click"));
    expect(selections).toEqual([marker.getAttribute("data-id")]);
  });

  it("shades the constraint region after a selection", () => {
    const { root } = renderScatter(front2, adapt2);
    const shades = root.querySelectorAll(".constraint-shade");
    expect(shades.length).toBeGreaterThan(0);
  });

  it("round-2 markers all lie outside every shaded rect", () => {
    const { root } = renderScatter(front2, adapt2);
    const shades = Array.from(root.querySelectorAll(".constraint-shade")).map((rect) => ({
      x: Number(rect.getAttribute("x")),
      y: Number(rect.getAttribute("y")),
      w: Number(rect.getAttribute("width")),
      h: Number(rect.getAttribute("height")),
    }));
    expect(shades.length).toBeGreaterThan(0);
    const markers = root.querySelectorAll(".front-point");
    for (const marker of Array.from(markers)) {
      const cx = Number(marker.getAttribute("cx"));
      const cy = Number(marker.getAttribute("cy"));
      for (const shade of shades) {
        const inside =
          cx > shade.x && cx < shade.x + shade.w && cy > shade.y && cy < shade.y + shade.h;
        expect(inside).toBe(false);
      }
    }
  });

  it("round-1 front would intrude into the round-2 constraint region", () => {
    // Sanity for the previous test: the shading is not trivially empty.
    const { root } = renderScatter(
      { ...front1, constraints: front2.constraints },
      adapt1
    );
    const shades = Array.from(root.querySelectorAll(".constraint-shade")).map((rect) => ({
      x: Number(rect.getAttribute("x")),
      y: Number(rect.getAttribute("y")),
      w: Number(rect.getAttribute("width")),
      h: Number(rect.getAttribute("height")),
    }));
    const markers = Array.from(root.querySelectorAll(".front-point"));
    const intruders = markers.filter((marker) => {
      const cx = Number(marker.getAttribute("cx"));
      const cy = Number(marker.getAttribute("cy"));
      return shades.some(
        (s) => cx > s.x && cx < s.x + s.w && cy > s.y && cy < s.y + s.h
      );
    });
    expect(intruders.length).toBeGreaterThan(0);
  });

  it("shows an empty state instead of crashing on an empty front", () => {
    const root = document.createElement("div");
    new ObjectiveScatter(root, () => {}).render(
      { ...front1, candidates: [] },
      null
    );
    expect(root.querySelector(".empty-state")).not.toBeNull();
    expect(root.querySelector("svg")).toBeNull();
  });
});
